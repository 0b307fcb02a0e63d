#pragma once

#include <chrono>
#include <string>

#include "evotune/param_space.hpp"

namespace evotune {

struct CommandResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string stdout_text;
    std::string stderr_text;

    bool ok() const { return exit_code == 0 && !timed_out; }
};

// Seam between the library and the operating system. Everything that would
// touch the machine goes through this interface, so every sysapply and live
// evaluation behavior is testable with a scripted stand-in and no privileges.
class CommandRunner {
public:
    virtual ~CommandRunner() = default;
    virtual CommandResult run(const CommandLine& cmd, std::chrono::milliseconds timeout) = 0;
};

// Real implementation: fork + execvp with captured stdout/stderr. Argv only,
// never a shell. On timeout the child gets SIGKILL and timed_out is set.
class ExecCommandRunner : public CommandRunner {
public:
    CommandResult run(const CommandLine& cmd, std::chrono::milliseconds timeout) override;
};

} // namespace evotune
