#include "evotune/sys_apply.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace evotune {

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \n\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \n\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\n' && s[i] != '\r') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool parse_i64(const std::string& s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

std::int64_t clamp_i64(std::int64_t v, std::int64_t lo, std::int64_t hi) {
    return std::clamp(v, lo, hi);
}

CommandLine iface_write_command(const ParameterSpec& spec, const std::string& value,
                                RenderStyle style) {
    const char* attr = spec.mechanism == Mechanism::InterfaceMtu ? "mtu" : "txqueuelen";
    if (style == RenderStyle::LegacyIfconfig) {
        return CommandLine{{"ifconfig", spec.iface, attr, value}};
    }
    return CommandLine{{"ip", "link", "set", "dev", spec.iface, attr, value}};
}

} // namespace

ApplySession::ApplySession(CommandRunner& runner, ApplyMode mode, RenderStyle style)
    : runner_(runner), mode_(mode), style_(style) {
    const char* env = std::getenv("EVOTUNE_DRY_RUN");
    if (env && std::string_view(env) == "1") {
        mode_ = ApplyMode::DryRun;
    }
}

ApplySession::~ApplySession() {
    try {
        restore();
    } catch (...) {
        // Destructor path: nothing sensible to do beyond the best effort.
    }
}

CommandResult ApplySession::exec(const CommandLine& cmd) {
    return runner_.run(cmd, command_timeout_);
}

const Snapshot& ApplySession::take_snapshot(const ParameterSpace& space) {
    if (snapshot_) return *snapshot_;

    Snapshot snap;
    if (mode_ == ApplyMode::Live) {
        for (const auto& spec : space.specs()) {
            SnapshotEntry entry;
            entry.key = spec.key;
            if (spec.mechanism == Mechanism::SysctlWrite) {
                CommandResult res = exec(CommandLine{{"sysctl", "-n", spec.key}});
                if (!res.ok()) {
                    throw ReadFailedError(spec.key);
                }
                // Keep the value verbatim apart from outer whitespace: triple
                // sysctls come back tab-separated and must be written back
                // exactly as read.
                entry.original_value = trim_copy(res.stdout_text);
                entry.restore_command =
                    CommandLine{{"sysctl", "-w", spec.key + "=" + entry.original_value}};
            } else {
                CommandResult res =
                    exec(CommandLine{{"ip", "-o", "link", "show", "dev", spec.iface}});
                if (!res.ok()) {
                    throw MissingInterfaceError(spec.iface);
                }
                const char* marker =
                    spec.mechanism == Mechanism::InterfaceMtu ? "mtu" : "qlen";
                auto tokens = split_ws(res.stdout_text);
                std::string value;
                for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
                    if (tokens[i] == marker) {
                        value = tokens[i + 1];
                        break;
                    }
                }
                // `ip -o` ends each output section with a backslash glued to
                // its last token ("... qlen 1000\"); peel it off.
                while (!value.empty() && value.back() == '\\') {
                    value.pop_back();
                }
                if (value.empty()) {
                    throw ReadFailedError(spec.key);
                }
                entry.original_value = value;
                entry.restore_command = iface_write_command(spec, value, style_);
            }
            snap.entries.push_back(std::move(entry));
        }
    }
    snapshot_ = std::move(snap);
    return *snapshot_;
}

ApplyOutcome ApplySession::apply(const ParameterSpace& space, const Chromosome& c) {
    validate_chromosome(space, c);
    auto commands = render_apply_commands(space, c, style_);

    ApplyOutcome outcome;
    if (mode_ == ApplyMode::DryRun) {
        for (auto& cmd : commands) {
            outcome.per_command.push_back(CommandStatus{std::move(cmd), true, {}});
        }
        return outcome;
    }

    if (!snapshot_) {
        throw NoSnapshotError();
    }

    for (std::size_t i = 0; i < commands.size(); ++i) {
        CommandResult res = exec(commands[i]);
        if (res.ok()) {
            outcome.per_command.push_back(CommandStatus{commands[i], true, {}});
            continue;
        }
        CommandStatus failed;
        failed.command = commands[i];
        failed.applied = false;
        failed.error = res.timed_out ? "timeout" : trim_copy(res.stderr_text);
        if (failed.error.empty()) {
            failed.error = "exit code " + std::to_string(res.exit_code);
        }
        outcome.per_command.push_back(std::move(failed));
        outcome.all_applied = false;
        // Put back what this apply already changed, newest first. The space
        // and the snapshot share index order, so entry i restores command i.
        for (std::size_t j = i; j-- > 0;) {
            exec(snapshot_->entries[j].restore_command);
        }
        break;
    }
    return outcome;
}

ApplyOutcome ApplySession::restore() {
    ApplyOutcome outcome;
    if (restored_ || mode_ == ApplyMode::DryRun || !snapshot_) {
        if (!restored_) restored_ = true;
        return outcome;
    }
    restored_ = true;
    for (auto it = snapshot_->entries.rbegin(); it != snapshot_->entries.rend(); ++it) {
        CommandResult res = exec(it->restore_command);
        CommandStatus status;
        status.command = it->restore_command;
        status.applied = res.ok();
        if (!res.ok()) {
            status.error = res.timed_out ? "timeout" : trim_copy(res.stderr_text);
            outcome.all_applied = false;
        }
        outcome.per_command.push_back(std::move(status));
    }
    return outcome;
}

Chromosome ApplySession::default_chromosome_from_snapshot(const ParameterSpace& space) const {
    if (!snapshot_) {
        throw NoSnapshotError();
    }
    // Snapshot entries are in space order, but match by key anyway so a
    // snapshot taken for a superset space still works.
    auto find_entry = [&](const std::string& key) -> const SnapshotEntry* {
        for (const auto& e : snapshot_->entries) {
            if (e.key == key) return &e;
        }
        return nullptr;
    };

    Chromosome c;
    c.genes.reserve(space.size());
    for (const auto& spec : space.specs()) {
        const SnapshotEntry* entry = find_entry(spec.key);
        if (!entry) {
            throw ReadFailedError(spec.key);
        }
        if (const auto* ir = std::get_if<IntRange>(&spec.kind)) {
            std::int64_t v;
            if (!parse_i64(entry->original_value, v)) {
                throw ReadFailedError(spec.key);
            }
            c.genes.push_back(clamp_i64(v, ir->min, ir->max));
        } else {
            const auto& tr = std::get<TripleRange>(spec.kind);
            auto parts = split_ws(entry->original_value);
            Triple t;
            if (parts.size() != 3) {
                throw ReadFailedError(spec.key);
            }
            for (std::size_t i = 0; i < 3; ++i) {
                std::int64_t v;
                if (!parse_i64(parts[i], v)) {
                    throw ReadFailedError(spec.key);
                }
                t[i] = clamp_i64(v, tr.min[i], tr.max[i]);
            }
            c.genes.push_back(t);
        }
    }
    return c;
}

} // namespace evotune
