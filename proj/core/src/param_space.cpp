#include "evotune/param_space.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace evotune {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool parse_i64(std::string_view s, std::int64_t& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

struct Bound {
    bool is_triple = false;
    std::int64_t scalar = 0;
    Triple triple{};
};

Bound parse_bound(std::string_view field, int line_no) {
    field = trim(field);
    if (field.empty()) {
        throw MalformedLineError(line_no, "empty bound field");
    }
    Bound b;
    if (field.front() == '\'') {
        if (field.size() < 2 || field.back() != '\'') {
            throw MalformedLineError(line_no, "unterminated quote in bound");
        }
        b.is_triple = true;
        auto comps = split_ws(field.substr(1, field.size() - 2));
        if (comps.size() != 3) {
            throw MalformedLineError(line_no, "quoted bound must hold exactly three integers");
        }
        for (std::size_t i = 0; i < 3; ++i) {
            if (!parse_i64(comps[i], b.triple[i])) {
                throw MalformedLineError(line_no,
                                         "non-integer bound component '" + std::string(comps[i]) + "'");
            }
        }
    } else {
        if (!parse_i64(field, b.scalar)) {
            throw MalformedLineError(line_no, "non-integer bound '" + std::string(field) + "'");
        }
    }
    return b;
}

// fnv-1a 64
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

void fnv_feed(std::uint64_t& h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
}

const char* mechanism_tag(Mechanism m) {
    switch (m) {
        case Mechanism::SysctlWrite: return "sysctl";
        case Mechanism::InterfaceMtu: return "mtu";
        case Mechanism::InterfaceTxqueuelen: return "txqueuelen";
    }
    return "?";
}

std::string kind_text(const ValueKind& kind) {
    if (const auto* ir = std::get_if<IntRange>(&kind)) {
        return std::to_string(ir->min) + ".." + std::to_string(ir->max);
    }
    const auto& tr = std::get<TripleRange>(kind);
    std::string out;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i) out += ',';
        out += std::to_string(tr.min[i]) + ".." + std::to_string(tr.max[i]);
    }
    return out;
}

std::string_view last_key_component(std::string_view key) {
    auto dot = key.rfind('.');
    return dot == std::string_view::npos ? key : key.substr(dot + 1);
}

bool is_ordered_triple_key(std::string_view key) {
    auto leaf = last_key_component(key);
    return leaf == "tcp_mem" || leaf == "tcp_rmem" || leaf == "tcp_wmem";
}

bool triple_bounds_monotone(const TripleRange& tr) {
    return tr.min[0] <= tr.min[1] && tr.min[1] <= tr.min[2] &&
           tr.max[0] <= tr.max[1] && tr.max[1] <= tr.max[2];
}

} // namespace

ParameterSpace::ParameterSpace(std::vector<ParameterSpec> specs) : specs_(std::move(specs)) {
    std::unordered_set<std::string_view> seen;
    for (const auto& s : specs_) {
        if (!seen.insert(s.key).second) {
            throw Error("duplicate parameter key '" + s.key + "'");
        }
    }
}

std::string CommandLine::display() const {
    std::string out;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        if (i) out += ' ';
        const std::string& a = argv[i];
        if (a.empty() || a.find(' ') != std::string::npos || a.find('\t') != std::string::npos) {
            out += '"';
            out += a;
            out += '"';
        } else {
            out += a;
        }
    }
    return out;
}

ParameterSpace parse_param_file(std::string_view text) {
    std::vector<ParameterSpec> specs;
    std::unordered_set<std::string> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        auto fields = split(line, ';');
        if (fields.size() != 3) {
            throw MalformedLineError(line_no, "expected 3 ';'-separated fields, got " +
                                                  std::to_string(fields.size()));
        }

        ParameterSpec spec;
        auto prefix_tokens = split_ws(fields[0]);
        if (!prefix_tokens.empty() && prefix_tokens[0] == "sysctl") {
            if (prefix_tokens.size() != 3 || prefix_tokens[1] != "-w" ||
                prefix_tokens[2].size() < 2 || prefix_tokens[2].back() != '=') {
                throw MalformedLineError(line_no, "bad sysctl prefix, expected 'sysctl -w KEY='");
            }
            spec.mechanism = Mechanism::SysctlWrite;
            spec.key = std::string(prefix_tokens[2].substr(0, prefix_tokens[2].size() - 1));
        } else if (!prefix_tokens.empty() && prefix_tokens[0] == "ifconfig") {
            if (prefix_tokens.size() != 3) {
                throw MalformedLineError(line_no,
                                         "bad interface prefix, expected 'ifconfig IF mtu ' or "
                                         "'ifconfig IF txqueuelen '");
            }
            spec.iface = std::string(prefix_tokens[1]);
            if (prefix_tokens[2] == "mtu") {
                spec.mechanism = Mechanism::InterfaceMtu;
            } else if (prefix_tokens[2] == "txqueuelen") {
                spec.mechanism = Mechanism::InterfaceTxqueuelen;
            } else {
                throw MalformedLineError(line_no, "unsupported interface attribute '" +
                                                      std::string(prefix_tokens[2]) + "'");
            }
            spec.key = std::string(prefix_tokens[2]) + "@" + spec.iface;
        } else {
            throw MalformedLineError(line_no, "unrecognized command prefix '" +
                                                  std::string(trim(fields[0])) + "'");
        }

        Bound lo = parse_bound(fields[1], line_no);
        Bound hi = parse_bound(fields[2], line_no);
        if (lo.is_triple != hi.is_triple) {
            throw MalformedLineError(line_no, "mixed scalar and triple bounds");
        }
        if (lo.is_triple) {
            for (std::size_t i = 0; i < 3; ++i) {
                if (lo.triple[i] > hi.triple[i]) {
                    throw MalformedLineError(line_no, "min > max in triple component " +
                                                          std::to_string(i));
                }
            }
            spec.kind = TripleRange{lo.triple, hi.triple};
        } else {
            if (lo.scalar > hi.scalar) {
                throw MalformedLineError(line_no, "min > max");
            }
            spec.kind = IntRange{lo.scalar, hi.scalar};
        }

        if (!seen.insert(spec.key).second) {
            throw MalformedLineError(line_no, "duplicate key '" + spec.key + "'");
        }
        specs.push_back(std::move(spec));
    }
    return ParameterSpace(std::move(specs));
}

ParameterSpace load_param_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open parameter file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_param_file(buf.str());
}

GeneValue sample_gene(const ParameterSpec& spec, RandomSource& rng) {
    if (const auto* ir = std::get_if<IntRange>(&spec.kind)) {
        return rng.uniform_int(ir->min, ir->max);
    }
    const auto& tr = std::get<TripleRange>(spec.kind);
    Triple t;
    for (std::size_t i = 0; i < 3; ++i) {
        t[i] = rng.uniform_int(tr.min[i], tr.max[i]);
    }
    if (is_ordered_triple_key(spec.key) && triple_bounds_monotone(tr)) {
        std::sort(t.begin(), t.end());
    }
    return t;
}

Chromosome sample_chromosome(const ParameterSpace& space, RandomSource& rng) {
    Chromosome c;
    c.genes.reserve(space.size());
    for (const auto& spec : space.specs()) {
        c.genes.push_back(sample_gene(spec, rng));
    }
    return c;
}

bool gene_in_range(const ParameterSpec& spec, const GeneValue& gene) {
    if (const auto* ir = std::get_if<IntRange>(&spec.kind)) {
        const auto* v = std::get_if<std::int64_t>(&gene);
        return v && *v >= ir->min && *v <= ir->max;
    }
    const auto& tr = std::get<TripleRange>(spec.kind);
    const auto* t = std::get_if<Triple>(&gene);
    if (!t) return false;
    for (std::size_t i = 0; i < 3; ++i) {
        if ((*t)[i] < tr.min[i] || (*t)[i] > tr.max[i]) return false;
    }
    return true;
}

void validate_chromosome(const ParameterSpace& space, const Chromosome& c) {
    if (c.genes.size() != space.size()) {
        throw InvalidChromosomeError("chromosome has " + std::to_string(c.genes.size()) +
                                     " genes, space expects " + std::to_string(space.size()));
    }
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!gene_in_range(space[i], c.genes[i])) {
            throw InvalidChromosomeError("gene " + std::to_string(i) + " ('" + space[i].key +
                                         "') is out of range");
        }
    }
}

std::string render_gene(const GeneValue& g) {
    if (const auto* v = std::get_if<std::int64_t>(&g)) {
        return std::to_string(*v);
    }
    const auto& t = std::get<Triple>(g);
    return std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]);
}

std::vector<CommandLine> render_apply_commands(const ParameterSpace& space, const Chromosome& c,
                                               RenderStyle style) {
    validate_chromosome(space, c);
    std::vector<CommandLine> cmds;
    cmds.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto& spec = space[i];
        const std::string value = render_gene(c.genes[i]);
        CommandLine cmd;
        switch (spec.mechanism) {
            case Mechanism::SysctlWrite:
                cmd.argv = {"sysctl", "-w", spec.key + "=" + value};
                break;
            case Mechanism::InterfaceMtu:
                if (style == RenderStyle::LegacyIfconfig) {
                    cmd.argv = {"ifconfig", spec.iface, "mtu", value};
                } else {
                    cmd.argv = {"ip", "link", "set", "dev", spec.iface, "mtu", value};
                }
                break;
            case Mechanism::InterfaceTxqueuelen:
                if (style == RenderStyle::LegacyIfconfig) {
                    cmd.argv = {"ifconfig", spec.iface, "txqueuelen", value};
                } else {
                    cmd.argv = {"ip", "link", "set", "dev", spec.iface, "txqueuelen", value};
                }
                break;
        }
        cmds.push_back(std::move(cmd));
    }
    return cmds;
}

Chromosome range_min_chromosome(const ParameterSpace& space) {
    Chromosome c;
    c.genes.reserve(space.size());
    for (const auto& spec : space.specs()) {
        if (const auto* ir = std::get_if<IntRange>(&spec.kind)) {
            c.genes.push_back(ir->min);
        } else {
            c.genes.push_back(std::get<TripleRange>(spec.kind).min);
        }
    }
    return c;
}

Chromosome range_max_chromosome(const ParameterSpace& space) {
    Chromosome c;
    c.genes.reserve(space.size());
    for (const auto& spec : space.specs()) {
        if (const auto* ir = std::get_if<IntRange>(&spec.kind)) {
            c.genes.push_back(ir->max);
        } else {
            c.genes.push_back(std::get<TripleRange>(spec.kind).max);
        }
    }
    return c;
}

std::string canonical_chromosome_key(const Chromosome& c) {
    std::string out;
    for (std::size_t i = 0; i < c.genes.size(); ++i) {
        if (i) out += '|';
        out += render_gene(c.genes[i]);
    }
    return out;
}

std::uint64_t space_fingerprint(const ParameterSpace& space) {
    std::uint64_t h = kFnvOffset;
    for (const auto& spec : space.specs()) {
        fnv_feed(h, spec.key);
        fnv_feed(h, "\x1f");
        fnv_feed(h, mechanism_tag(spec.mechanism));
        fnv_feed(h, "\x1f");
        fnv_feed(h, spec.iface);
        fnv_feed(h, "\x1f");
        fnv_feed(h, kind_text(spec.kind));
        fnv_feed(h, "\x1e");
    }
    return h;
}

std::string space_hash_string(const ParameterSpace& space) {
    static const char* hex = "0123456789abcdef";
    std::uint64_t h = space_fingerprint(space);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) {
        out += hex[(h >> shift) & 0xF];
    }
    return out;
}

} // namespace evotune
