#pragma once

#include <string>
#include <vector>

namespace qwalk {

// Tabular command output: CSV (default) or a JSON envelope with the
// resolved configuration echoed alongside the data.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string table_to_csv(const Table& table);
std::string table_to_json(const Table& table, const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& config);

// Full command-line entry point. Returns the process exit code:
// 0 success, 2 configuration error, 3 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace qwalk
