#include "h3/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace h3 {

namespace {

LogLevel parse_level()
{
    const char* env = std::getenv("H3_LOG");
    if (!env)
        return LogLevel::Off;
    std::string_view s(env);
    if (s == "debug" || s == "2")
        return LogLevel::Debug;
    if (s == "info" || s == "1")
        return LogLevel::Info;
    return LogLevel::Off;
}

} // namespace

LogLevel log_level()
{
    static const LogLevel level = parse_level();
    return level;
}

void log_info(const std::string& msg)
{
    if (log_level() >= LogLevel::Info)
        std::cerr << "[h3] " << msg << '\n';
}

void log_debug(const std::string& msg)
{
    if (log_level() >= LogLevel::Debug)
        std::cerr << "[h3:debug] " << msg << '\n';
}

} // namespace h3
