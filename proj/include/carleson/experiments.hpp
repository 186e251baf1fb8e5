#pragma once

// Scripted experiments behind `reproduce` and the acceptance binary. Each
// suite returns a verdict, a one-line detail and the tables it computed.

#include <string>
#include <vector>

namespace carleson {

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct SuiteOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget = 0.0;  // runtime limit in seconds
  std::string detail;
  std::vector<Table> tables;
};

// thm12-slope, lemma31-ratios, ... in criterion order.
const std::vector<std::string>& suite_names();

// Throws RangeError for an unknown name.
SuiteOutcome run_suite(const std::string& name);
SuiteOutcome run_suite(int id);

// Writes one CSV per table into `dir` as <suite>-<table>.csv and returns the paths.
std::vector<std::string> write_tables(const SuiteOutcome& outcome, const std::string& dir);

}  // namespace carleson
