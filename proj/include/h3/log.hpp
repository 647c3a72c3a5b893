#pragma once

#include <string>

namespace h3 {

// Trace verbosity from the H3_LOG environment variable: "off" (default),
// "info" or "debug" (also 0/1/2). Messages go to stderr.
enum class LogLevel { Off = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

} // namespace h3
