#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kw {

/// One command-line invocation. Exit codes: 0 success / all checks pass,
/// 1 verification failure, 2 input error.
struct SessionConfig {
    std::string bundle_path;
    int degree_bound = 2;
    bool machine = false;
    bool print_table = false;
    std::string command;            // pbracket|kw|wedge|pair|eval|symbol|verify|example
    std::vector<std::string> args;  // expressions, file paths or names
};

int run(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and runs; used by the binary and by tests.
int main_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
             std::ostream& err);

} // namespace kw
