#pragma once

#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace locrad::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kRuntime = 2,
    kCoverageExceeded = 3,
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help; the message is the help text.
class HelpRequested : public UsageError {
public:
    using UsageError::UsageError;
};

/// Command name plus merged key=value settings: config file first, then
/// flags. Keys are validated against the command's key list.
struct ParsedArgs {
    std::string command;
    std::map<std::string, std::string> values;
};

/// `args` excludes the program name. Throws UsageError.
ParsedArgs parse_args(const std::vector<std::string>& args);

/// Flat "key = value" text; '#' starts a comment line. Throws UsageError.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Keys accepted by `command`, in provenance order.
const std::vector<std::string>& command_keys(const std::string& command);

/// Parses, runs and writes artifacts; returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace locrad::cli
