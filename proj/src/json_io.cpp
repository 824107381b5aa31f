#include "tslab/json_io.hpp"

#include <cctype>
#include <string>

namespace tslab {

namespace {

long long to_ll(const Int& v) { return v.convert_to<long long>(); }

long long int_field(const json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_string()) {
        try {
            return std::stoll(v.get<std::string>());
        } catch (...) {
        }
    }
    throw domain_error(path + ": expected integer");
}

const json& need(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw domain_error(path + ": expected object");
    auto it = j.find(key);
    if (it == j.end()) throw domain_error(path + ": missing field '" + key + "'");
    return *it;
}

const json& need_array(const json& v, const std::string& path) {
    if (!v.is_array()) throw domain_error(path + ": expected array");
    return v;
}

std::vector<Int> int_list(const json& v, const std::string& path) {
    std::vector<Int> out;
    for (std::size_t i = 0; i < need_array(v, path).size(); ++i)
        out.push_back(int_field(v[i], path + "/" + std::to_string(i)));
    return out;
}

}  // namespace

json to_json(const CyclicRing& r) { return json{{"modulus", to_ll(r.modulus)}}; }

json to_json(const SpecSubset& s) {
    json ps = json::array();
    for (const Int& p : s.primes) ps.push_back(to_ll(p));
    return json{{"primes", ps}};
}

json to_json(const Ideal& i) { return json{{"gen", to_ll(i.gen)}}; }

json to_json(const FinModule& m) {
    json fs = json::array();
    for (const Int& f : m.factors) fs.push_back(to_ll(f));
    return json{{"factors", fs}};
}

json to_json(const ModuleMap& f) {
    json rows = json::array();
    for (std::size_t i = 0; i < f.matrix.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < f.matrix.cols(); ++j) row.push_back(to_ll(f.matrix.at(i, j)));
        rows.push_back(row);
    }
    return json{{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"matrix", rows}};
}

json to_json(const Complex& x) {
    json mods = json::array(), diffs = json::array();
    for (const FinModule& m : x.coords) mods.push_back(to_json(m));
    for (const ModuleMap& d : x.diffs) {
        json rows = json::array();
        for (std::size_t i = 0; i < d.matrix.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < d.matrix.cols(); ++j)
                row.push_back(to_ll(d.matrix.at(i, j)));
            rows.push_back(row);
        }
        diffs.push_back(json{{"matrix", rows}});
    }
    return json{{"min_degree", x.min_degree}, {"modules", mods}, {"differentials", diffs}};
}

json to_json(const GradedModule& g) {
    json parts = json::array();
    for (const auto& [n, m] : g.parts) {
        json fs = json::array();
        for (const Int& f : m.factors) fs.push_back(to_ll(f));
        parts.push_back(json{{"degree", n}, {"factors", fs}});
    }
    return json{{"parts", parts}};
}

json to_json(const Cutoff& c) {
    if (c.kind == Cutoff::Kind::pos_inf) return "+inf";
    if (c.kind == Cutoff::Kind::neg_inf) return "-inf";
    return c.value;
}

json to_json(const ThomasonFiltration& f) {
    json cuts = json::array();
    for (const auto& [p, c] : f.cutoffs)
        cuts.push_back(json{{"prime", to_ll(p)}, {"top", to_json(c)}});
    return json{{"cutoffs", cuts}};
}

CyclicRing ring_from_json(const json& j) {
    long long n = int_field(need(j, "modulus", ""), "/modulus");
    if (n < 2) throw domain_error("/modulus: modulus too small");
    return make_ring(n);
}

SpecSubset subset_from_json(const CyclicRing& r, const json& j) {
    return make_subset(r, int_list(need(j, "primes", ""), "/primes"));
}

Ideal ideal_from_json(const CyclicRing& r, const json& j) {
    return make_ideal(r, int_field(need(j, "gen", ""), "/gen"));
}

FinModule module_from_json(const CyclicRing& r, const json& j) {
    std::vector<Int> fs = int_list(need(j, "factors", ""), "/factors");
    try {
        return make_module(r, fs);
    } catch (const domain_error& e) {
        throw domain_error(std::string("/factors: ") + e.what());
    }
}

namespace {

IntMat matrix_from_json(const FinModule& src, const FinModule& tgt, const json& v,
                        const std::string& path) {
    const json& rows = need_array(v, path);
    if (rows.size() != tgt.rank())
        throw domain_error(path + ": expected " + std::to_string(tgt.rank()) + " rows");
    IntMat m(tgt.rank(), src.rank());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::string rpath = path + "/" + std::to_string(i);
        const json& row = need_array(rows[i], rpath);
        if (row.size() != src.rank())
            throw domain_error(rpath + ": expected " + std::to_string(src.rank()) + " columns");
        for (std::size_t jx = 0; jx < row.size(); ++jx) {
            std::string epath = rpath + "/" + std::to_string(jx);
            Int a = mod_norm(int_field(row[jx], epath), tgt.factors[i]);
            Int g = gcd(tgt.factors[i], src.factors[jx]);
            if (a % (tgt.factors[i] / g) != 0)
                throw domain_error(epath + ": entry not well-defined");
            m.at(i, jx) = a;
        }
    }
    return m;
}

}  // namespace

ModuleMap map_from_json(const CyclicRing& r, const json& j) {
    FinModule src = module_from_json(r, need(j, "source", ""));
    FinModule tgt = module_from_json(r, need(j, "target", ""));
    return ModuleMap(src, tgt, matrix_from_json(src, tgt, need(j, "matrix", ""), "/matrix"));
}

Complex complex_from_json(const CyclicRing& r, const json& j) {
    int lo = static_cast<int>(int_field(need(j, "min_degree", ""), "/min_degree"));
    const json& mods = need_array(need(j, "modules", ""), "/modules");
    const json& diffs = need_array(need(j, "differentials", ""), "/differentials");
    if (mods.empty()) return zero_complex(r);
    if (diffs.size() + 1 != mods.size())
        throw domain_error("/differentials: expected " + std::to_string(mods.size() - 1) +
                           " entries");
    std::vector<FinModule> coords;
    for (std::size_t i = 0; i < mods.size(); ++i) {
        try {
            coords.push_back(module_from_json(r, mods[i]));
        } catch (const domain_error& e) {
            throw domain_error("/modules/" + std::to_string(i) + e.what());
        }
    }
    std::vector<ModuleMap> maps;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        std::string path = "/differentials/" + std::to_string(i) + "/matrix";
        maps.emplace_back(coords[i], coords[i + 1],
                          matrix_from_json(coords[i], coords[i + 1],
                                           need(diffs[i], "matrix", path), path));
    }
    return make_complex(r, lo, std::move(coords), std::move(maps));
}

Cutoff cutoff_from_json(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "+inf" || s == "inf") return Cutoff::pos_inf();
        if (s == "-inf") return Cutoff::neg_inf();
        throw domain_error("/top: expected integer, \"+inf\", or \"-inf\"");
    }
    return Cutoff::at(static_cast<int>(int_field(j, "/top")));
}

ThomasonFiltration filtration_from_json(const CyclicRing& r, const json& j) {
    if (j.is_object() && j.contains("cutoffs")) {
        const json& cuts = need_array(j.at("cutoffs"), "/cutoffs");
        std::map<Int, Cutoff> m;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            std::string path = "/cutoffs/" + std::to_string(i);
            Int p = int_field(need(cuts[i], "prime", path), path + "/prime");
            m[p] = cutoff_from_json(need(cuts[i], "top", path));
        }
        return make_filtration(r, m);
    }
    if (j.is_object() && j.contains("jumps")) {
        const json& js = need_array(j.at("jumps"), "/jumps");
        std::vector<FiltrationJump> jumps;
        for (std::size_t i = 0; i < js.size(); ++i) {
            std::string path = "/jumps/" + std::to_string(i);
            const json& pair = need_array(js[i], path);
            if (pair.size() != 2) throw domain_error(path + ": expected [degree, [primes]]");
            jumps.push_back({static_cast<int>(int_field(pair[0], path + "/0")),
                             int_list(pair[1], path + "/1")});
        }
        std::optional<std::vector<Int>> below;
        if (j.contains("below") && !(j.at("below").is_string() && j.at("below") == "spec"))
            below = int_list(j.at("below"), "/below");
        std::vector<Int> above;
        if (j.contains("above")) above = int_list(j.at("above"), "/above");
        return filtration_from_jumps(r, jumps, below, above);
    }
    throw domain_error("filtration: expected a \"cutoffs\" or \"jumps\" object");
}

namespace {

std::string trimmed(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

long long sugar_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw domain_error("complex sugar: expected integer " + what + ", got '" + s + "'");
    }
}

std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[' || ch == '{') ++depth;
        if (ch == ')' || ch == ']' || ch == '}') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(trimmed(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trimmed(cur).empty() || !out.empty()) out.push_back(trimmed(cur));
    return out;
}

}  // namespace

Complex parse_complex_text(const CyclicRing& r, const std::string& text) {
    std::string s = trimmed(text);
    if (s.empty()) throw domain_error("complex: empty input");
    if (s[0] == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::parse_error& e) {
            throw domain_error(std::string("complex: invalid JSON: ") + e.what());
        }
        return complex_from_json(r, j);
    }

    std::size_t open = s.find('(');
    std::size_t close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw domain_error("complex sugar: expected stalk(...), koszul(...), or K(...)");
    std::string head = trimmed(s.substr(0, open));
    std::string inner = s.substr(open + 1, close - open - 1);
    std::string tail = trimmed(s.substr(close + 1));

    int shift_by = 0;
    if (!tail.empty()) {
        if (tail.front() != '[' || tail.back() != ']')
            throw domain_error("complex sugar: trailing text must be a [shift]");
        shift_by = static_cast<int>(
            sugar_int(trimmed(tail.substr(1, tail.size() - 2)), "shift"));
    }

    std::vector<std::string> args = split_top_level(inner);
    if (head == "stalk") {
        if (args.empty() || args.size() > 2)
            throw domain_error("complex sugar: stalk takes (d) or (d,[degree])");
        int degree = 0;
        if (args.size() == 2) {
            std::string d = args[1];
            if (d.size() < 2 || d.front() != '[' || d.back() != ']')
                throw domain_error("complex sugar: stalk degree must be bracketed");
            degree = static_cast<int>(sugar_int(trimmed(d.substr(1, d.size() - 2)), "degree"));
        }
        Int gen = sugar_int(args[0], "generator");
        return shift(stalk_complex(r, cyclic_module(r, gen), degree), shift_by);
    }
    if (head == "koszul" || head == "K") {
        if (args.empty()) throw domain_error("complex sugar: koszul needs ring elements");
        std::vector<Int> xs;
        for (const std::string& a : args) xs.push_back(sugar_int(a, "ring element"));
        return shift(koszul(r, xs), shift_by);
    }
    throw domain_error("complex sugar: unknown form '" + head + "'");
}

std::vector<Complex> parse_complex_list(const CyclicRing& r, const std::string& text) {
    std::string s = trimmed(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw domain_error("complex list: expected [item, item, ...]");
    std::string inner = trimmed(s.substr(1, s.size() - 2));
    std::vector<Complex> out;
    if (inner.empty()) return out;
    for (const std::string& item : split_top_level(inner))
        out.push_back(parse_complex_text(r, item));
    return out;
}

}  // namespace tslab
