#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evotune/errors.hpp"
#include "evotune/random.hpp"

namespace evotune {

// How a parameter reaches the system.
enum class Mechanism {
    SysctlWrite,         // sysctl -w KEY=VALUE
    InterfaceMtu,        // ip link set dev IF mtu VALUE
    InterfaceTxqueuelen, // ip link set dev IF txqueuelen VALUE
};

struct IntRange {
    std::int64_t min = 0;
    std::int64_t max = 0;
    bool operator==(const IntRange&) const = default;
};

// Three independent per-component ranges, rendered space-joined ("a b c").
// Used for sysctls like tcp_rmem whose value is a min/default/max triple.
struct TripleRange {
    std::array<std::int64_t, 3> min{};
    std::array<std::int64_t, 3> max{};
    bool operator==(const TripleRange&) const = default;
};

using ValueKind = std::variant<IntRange, TripleRange>;

struct ParameterSpec {
    // Sysctl key ("net.ipv4.tcp_sack"), or a synthetic "mtu@IF" /
    // "txqueuelen@IF" for interface attributes so keys stay unique and
    // snapshots have a stable name per knob.
    std::string key;
    Mechanism mechanism = Mechanism::SysctlWrite;
    std::string iface; // set iff mechanism is an interface one
    ValueKind kind;
};

using Triple = std::array<std::int64_t, 3>;
using GeneValue = std::variant<std::int64_t, Triple>;

struct Chromosome {
    std::vector<GeneValue> genes;
    bool operator==(const Chromosome&) const = default;
};

// Ordered, unique-keyed list of specs. Gene index i always means specs()[i].
class ParameterSpace {
public:
    ParameterSpace() = default;
    explicit ParameterSpace(std::vector<ParameterSpec> specs); // throws Error on duplicate keys

    const std::vector<ParameterSpec>& specs() const { return specs_; }
    const ParameterSpec& operator[](std::size_t i) const { return specs_[i]; }
    std::size_t size() const { return specs_.size(); }
    bool empty() const { return specs_.empty(); }

private:
    std::vector<ParameterSpec> specs_;
};

// One rendered system command as an argv vector. Never passed to a shell.
struct CommandLine {
    std::vector<std::string> argv;
    bool operator==(const CommandLine&) const = default;

    // Human-readable form for logs and dry-run plans; quotes args with spaces.
    std::string display() const;
};

enum class RenderStyle {
    IpLink,         // modern iproute2 commands
    LegacyIfconfig, // ifconfig forms, for systems that still use net-tools
};

// Parses the parameter file grammar: one spec per line,
//   <apply-command-prefix>;<min>;<max>
// where the prefix is "sysctl -w KEY=", "ifconfig IF mtu " or
// "ifconfig IF txqueuelen ", and triple bounds are single-quoted
// space-separated integers. '#' comments and blank lines are skipped;
// CRLF input is accepted. Every rejection is a MalformedLineError with the
// 1-based line number; a file is never half-parsed.
ParameterSpace parse_param_file(std::string_view text);

// Reads and parses a file; I/O failures raise Error with the path.
ParameterSpace load_param_file(const std::string& path);

// Built-in catalogs: "listing1-14" (14 knobs) and "table2-27" (27 knobs).
ParameterSpace builtin_catalog(std::string_view name); // throws UnknownCatalogError
std::vector<std::string> builtin_catalog_names();

// Uniform inclusive sampling per gene; triple components drawn independently.
// For the kernel's ordered triples (tcp_mem/tcp_rmem/tcp_wmem) the sampled
// components are sorted ascending, but only when the spec's bounds are
// component-wise non-decreasing; sorting under any other bounds could push a
// component outside its own range, and sampling must never produce an
// invalid gene.
GeneValue sample_gene(const ParameterSpec& spec, RandomSource& rng);
Chromosome sample_chromosome(const ParameterSpace& space, RandomSource& rng);

bool gene_in_range(const ParameterSpec& spec, const GeneValue& gene);
// Throws InvalidChromosomeError naming the first offending gene.
void validate_chromosome(const ParameterSpace& space, const Chromosome& c);

// One command per gene, in space order. Validates first.
std::vector<CommandLine> render_apply_commands(const ParameterSpace& space, const Chromosome& c,
                                               RenderStyle style = RenderStyle::IpLink);

// The all-minimum chromosome. The shipped catalogs put stock kernel defaults
// at the range minimum, so this doubles as the baseline configuration for
// simulated and replayed runs.
Chromosome range_min_chromosome(const ParameterSpace& space);
Chromosome range_max_chromosome(const ParameterSpace& space);

// "5" for ints, "4096 87380 6291456" for triples.
std::string render_gene(const GeneValue& g);

// Stable text identity of a chromosome: gene renderings joined with '|'.
// Used as the replay cache key.
std::string canonical_chromosome_key(const Chromosome& c);

// FNV-1a 64-bit over a canonical rendering of every spec. Stable across
// platforms and builds; reports embed it so a replay cache or report can be
// checked against the space it came from.
std::uint64_t space_fingerprint(const ParameterSpace& space);
std::string space_hash_string(const ParameterSpace& space); // "fnv1a64:<16 hex>"

} // namespace evotune
