#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "opz/errors.hpp"
#include "opz/model.hpp"
#include "opz/process.hpp"
#include "opz/relation.hpp"

namespace opz {

// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

inline bool parse_u32(std::string_view tok, std::uint32_t& out) {
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

inline bool parse_f64(std::string_view tok, double& out) {
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

inline bool is_blank_or_comment(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace detail

enum class LoadMode { strict, close };

// OPZ text format, one process per file:
//
//   opz 1
//   # optional comments and blank lines
//   e <j> <k> <time>
//
// Strict mode validates the max-triangle constraint; close mode returns the
// minimax closure of the raw edges (the smallest valid process containing
// them).  Absent pairs mean the pair never switches.
inline OrderProcess parse_opz(const std::string& text, LoadMode mode) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    std::vector<OrderProcess::Entry> entries;
    std::map<Pair, int> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        const auto toks = detail::split_ws(line);
        if (!saw_header) {
            if (toks.size() != 2 || toks[0] != "opz" || toks[1] != "1")
                throw ParseError("expected header \"opz 1\"", lineno);
            saw_header = true;
            continue;
        }
        if (toks[0] != "e" || toks.size() != 4)
            throw ParseError("expected \"e <j> <k> <time>\"", lineno);
        std::uint32_t j, k;
        double t;
        if (!detail::parse_u32(toks[1], j) || !detail::parse_u32(toks[2], k))
            throw ParseError("bad element index", lineno);
        if (!detail::parse_f64(toks[3], t) || !std::isfinite(t) || t < 0)
            throw ParseError("bad switching time", lineno);
        if (j == k) throw ParseError("edge endpoints must differ", lineno);
        const auto [it, inserted] = seen.emplace(Pair{j, k}, lineno);
        if (!inserted)
            throw ParseError("duplicate edge, first seen at line " + std::to_string(it->second),
                             lineno);
        entries.push_back({{j, k}, t});
    }
    if (!saw_header) throw ParseError("missing header \"opz 1\"", lineno);
    if (mode == LoadMode::close) return minimax_closure(entries);
    return OrderProcess::checked(std::move(entries));
}

inline std::string to_opz_string(const OrderProcess& z) {
    std::string out = "opz 1\n";
    for (const auto& [p, t] : z.entries()) {
        out += "e ";
        out += std::to_string(p.first);
        out += ' ';
        out += std::to_string(p.second);
        out += ' ';
        out += format_double(t);
        out += '\n';
    }
    return out;
}

inline OrderProcess load_opz(const std::filesystem::path& path, LoadMode mode = LoadMode::strict) {
    return parse_opz(detail::read_file(path), mode);
}

inline void save_opz(const OrderProcess& z, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << to_opz_string(z);
    if (!out) throw Error("write failed for " + path.string());
}

// Precedence lists for job networks: lines "d <j> <k>" meaning job j must
// finish before job k starts.  The loader returns the transitive closure.
inline PartialOrder parse_dag(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<Pair> raw;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        const auto toks = detail::split_ws(line);
        if (toks[0] != "d" || toks.size() != 3)
            throw ParseError("expected \"d <j> <k>\"", lineno);
        std::uint32_t j, k;
        if (!detail::parse_u32(toks[1], j) || !detail::parse_u32(toks[2], k))
            throw ParseError("bad job index", lineno);
        if (j == k) throw ParseError("a job cannot precede itself", lineno);
        raw.push_back({j, k});
    }
    return transitive_closure(raw);
}

inline PartialOrder load_dag(const std::filesystem::path& path) {
    return parse_dag(detail::read_file(path));
}

namespace detail {

inline Distribution parse_distribution(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    Distribution d;
    if (name == "uniform") {
        d.family = DistFamily::uniform;
        const auto comma = args.find(',');
        if (comma == std::string::npos || !parse_f64(trim(args.substr(0, comma)), d.a) ||
            !parse_f64(trim(args.substr(comma + 1)), d.b))
            throw InvalidModel("dist=uniform needs \"uniform:a,b\"");
    } else if (name == "exp") {
        d.family = DistFamily::exponential;
        if (!parse_f64(trim(args), d.rate)) throw InvalidModel("dist=exp needs \"exp:rate\"");
    } else {
        throw InvalidModel("unknown distribution \"" + name + "\"");
    }
    d.validate();
    return d;
}

}  // namespace detail

// Flat key=value model configuration:
//
//   model=dirac|completion|edge_minimax|mixture
//   n=<window>                  dist=uniform:a,b | exp:rate
//   base=full | dag:<path>      permute=on|off
//   z=<path.opz>                (dirac)
//   mix=<w>:<path>[,<w>:<path>...]   (mixture; may repeat)
//
// Relative paths resolve against the config file's directory.
inline MeasureModel load_model(const std::filesystem::path& path);

inline MeasureModel parse_model(const std::string& text, const std::filesystem::path& dir) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<std::string, std::string>> kvs;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        kvs.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
    auto get = [&](const std::string& key) -> const std::string* {
        for (const auto& [k, v] : kvs)
            if (k == key) return &v;
        return nullptr;
    };
    auto resolve = [&](const std::string& p) {
        std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : dir / fp;
    };
    const std::string* kind = get("model");
    if (!kind) throw InvalidModel("missing model= key");

    static const std::vector<std::string> known{"model", "n", "dist", "base",
                                                "permute", "z", "mix"};
    for (const auto& [k, v] : kvs)
        if (std::find(known.begin(), known.end(), k) == known.end())
            throw InvalidModel("unknown key \"" + k + "\"");

    auto need_window = [&]() {
        const std::string* n = get("n");
        std::uint32_t w;
        if (!n || !detail::parse_u32(*n, w) || w < 1) throw InvalidModel("n= must be a positive integer");
        return w;
    };

    MeasureModel m;
    if (*kind == "dirac") {
        const std::string* z = get("z");
        if (!z) throw InvalidModel("dirac needs z=<path.opz>");
        m = MeasureModel::dirac_at(load_opz(resolve(*z), LoadMode::strict));
        if (get("n")) m.window = need_window();
    } else if (*kind == "completion") {
        const std::string* dist = get("dist");
        if (!dist) throw InvalidModel("completion needs dist=");
        const unsigned w = need_window();
        const std::string* base = get("base");
        const std::string* permute = get("permute");
        bool perm = false;
        if (permute) {
            if (*permute != "on" && *permute != "off")
                throw InvalidModel("permute= must be on or off");
            perm = *permute == "on";
        }
        if (!base || *base == "full") {
            if (perm) throw InvalidModel("permute applies only to dag bases");
            m = MeasureModel::completion_full(w, detail::parse_distribution(*dist));
        } else if (base->rfind("dag:", 0) == 0) {
            m = MeasureModel::completion_dag(w, detail::parse_distribution(*dist),
                                             load_dag(resolve(base->substr(4))), perm);
        } else {
            throw InvalidModel("base= must be full or dag:<path>");
        }
    } else if (*kind == "edge_minimax") {
        const std::string* dist = get("dist");
        if (!dist) throw InvalidModel("edge_minimax needs dist=exp:<rate>");
        const Distribution d = detail::parse_distribution(*dist);
        if (d.family != DistFamily::exponential)
            throw InvalidModel("edge_minimax requires an exponential distribution");
        m = MeasureModel::edge_minimax_model(need_window(), d.rate);
    } else if (*kind == "mixture") {
        std::vector<double> weights;
        std::vector<MeasureModel> parts;
        for (const auto& [k, v] : kvs) {
            if (k != "mix") continue;
            std::istringstream items(v);
            std::string item;
            while (std::getline(items, item, ',')) {
                item = detail::trim(item);
                const auto colon = item.find(':');
                double w;
                if (colon == std::string::npos || !detail::parse_f64(item.substr(0, colon), w))
                    throw InvalidModel("mix entries look like <weight>:<path>");
                weights.push_back(w);
                parts.push_back(load_model(resolve(item.substr(colon + 1))));
            }
        }
        if (parts.empty()) throw InvalidModel("mixture needs at least one mix= entry");
        m = MeasureModel::mixture_of(std::move(weights), std::move(parts));
    } else {
        throw InvalidModel("unknown model \"" + *kind + "\"");
    }
    m.validate();
    return m;
}

inline MeasureModel load_model(const std::filesystem::path& path) {
    return parse_model(detail::read_file(path), path.parent_path());
}

}  // namespace opz
