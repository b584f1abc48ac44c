#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace zom
{
    inline constexpr std::string_view tool_version = "0.1.0";

    namespace exit_code
    {
        inline constexpr int ok = 0;
        inline constexpr int avoided = 1;
        inline constexpr int failure = 2;
        inline constexpr int usage = 64;
        inline constexpr int scale = 65;
    }

    /// Runs one command line (without the program name). Reports go to
    /// `out` when asked for with `--json -`, diagnostics to `err`.
    auto run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
