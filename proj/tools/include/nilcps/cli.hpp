#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nilcps::cli {

enum ExitCode { kOk = 0, kValidation = 2, kBudget = 3 };

// Runs one subcommand; args excludes the program name. Results go to out
// (or the --out file), progress and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Versioned CSV: "# nilcps-csv <kind> v<version>", a header row, data rows,
// then "# key=value ..." footer lines.
struct CsvTable {
    std::string kind;
    int version = 1;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footer;
};
std::string write_csv(const CsvTable& t);
// throws std::runtime_error on malformed input or an unknown kind/version
CsvTable read_csv(const std::string& text);
// supported schema versions per kind
const std::map<std::string, int>& csv_versions();

}  // namespace nilcps::cli
