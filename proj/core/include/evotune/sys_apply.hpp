#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "evotune/command_runner.hpp"
#include "evotune/param_space.hpp"

namespace evotune {

enum class ApplyMode { Live, DryRun };

struct SnapshotEntry {
    std::string key;            // spec key ("net.core.rmem_max", "mtu@eno2")
    std::string original_value; // as read from the system
    CommandLine restore_command;
};

struct Snapshot {
    std::vector<SnapshotEntry> entries; // capture order = space order
};

struct CommandStatus {
    CommandLine command;
    bool applied = false;
    std::string error; // stderr or reason when not applied
};

struct ApplyOutcome {
    std::vector<CommandStatus> per_command;
    bool all_applied = true; // false means a failure occurred and rollback ran
};

// One tuning session against one machine: snapshot, then any number of
// applies (each individual overwrites the previous one; no restore in
// between), then exactly one restore. The destructor restores if nobody did,
// so aborts and evaluator failures can simply unwind.
//
// DryRun sessions execute nothing at all: snapshot records nothing, apply
// reports every command as applied without running it, restore is a no-op.
// The environment variable EVOTUNE_DRY_RUN=1 forces DryRun regardless of the
// requested mode.
class ApplySession {
public:
    ApplySession(CommandRunner& runner, ApplyMode mode, RenderStyle style = RenderStyle::IpLink);
    ~ApplySession();
    ApplySession(const ApplySession&) = delete;
    ApplySession& operator=(const ApplySession&) = delete;

    ApplyMode mode() const { return mode_; }

    // Live: reads the current value of every key the space can touch (sysctl
    // via `sysctl -n`, interface attributes via `ip -o link show`), before
    // anything is written. Throws ReadFailedError / MissingInterfaceError.
    // Idempotent: a second call returns the snapshot already taken.
    const Snapshot& take_snapshot(const ParameterSpace& space);

    // Renders and executes the chromosome's commands in space order. On the
    // first failure, already-applied entries are rolled back from the
    // snapshot in reverse order and the outcome reports PartiallyApplied
    // (all_applied = false). Live mode without a snapshot throws
    // NoSnapshotError.
    ApplyOutcome apply(const ParameterSpace& space, const Chromosome& c);

    // Writes every snapshot entry back, newest first, continuing past
    // individual failures (best effort). Runs at most once per session;
    // later calls (including the destructor's) are no-ops.
    ApplyOutcome restore();

    bool restored() const { return restored_; }
    const std::optional<Snapshot>& snapshot() const { return snapshot_; }

    // The system's pre-run configuration as a chromosome, for the default
    // fitness baseline. Values outside a spec's tuning range are clamped to
    // the nearest bound (systems often idle outside the search window).
    Chromosome default_chromosome_from_snapshot(const ParameterSpace& space) const;

private:
    CommandResult exec(const CommandLine& cmd);

    CommandRunner& runner_;
    ApplyMode mode_;
    RenderStyle style_;
    std::optional<Snapshot> snapshot_;
    bool restored_ = false;
    std::chrono::milliseconds command_timeout_{10000};
};

} // namespace evotune
