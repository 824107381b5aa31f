#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tslab/json_io.hpp"
#include "tslab/lab.hpp"

#ifdef TSLAB_HAVE_OPENSSL
#include <openssl/evp.h>
#endif

namespace {

using namespace tslab;
using nlohmann::json;

std::string input_hash(const json& inputs) {
    std::string s = inputs.dump();
#ifdef TSLAB_HAVE_OPENSSL
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
    static const char hex[] = "0123456789abcdef";
    std::string out = "sha256:";
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
#else
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
#endif
}

struct Emit {
    std::string out_path;
    std::string format = "json";
};

json envelope(const char* verb, const json& inputs) {
    return json{{"schema", 1},
                {"tool", json{{"name", "tslab"}, {"version", TSLAB_VERSION}}},
                {"verb", verb},
                {"input_hash", input_hash(inputs)}};
}

void emit(const json& doc, const std::string& text, const Emit& e) {
    std::string payload = e.format == "text" ? text : doc.dump(2) + "\n";
    if (e.out_path.empty()) {
        std::fputs(payload.c_str(), stdout);
    } else {
        std::ofstream f(e.out_path);
        if (!f) throw domain_error("cannot write " + e.out_path);
        f << payload;
    }
}

json read_in_document(const std::string& path) {
    if (path.empty()) return json::object();
    std::string text;
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream f(path);
        if (!f) throw domain_error("cannot read " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw domain_error("input is not valid JSON");
    if (!j.is_object()) throw domain_error("input document must be an object");
    return j;
}

json parse_json_flag(const std::string& s, const char* what) {
    json j = json::parse(s, nullptr, false);
    if (j.is_discarded()) throw domain_error(std::string(what) + ": not valid JSON");
    return j;
}

Complex get_complex(const CyclicRing& r, const std::string& flag, const json& in, json& inputs) {
    if (!flag.empty()) {
        inputs["complex"] = flag;
        return parse_complex_text(r, flag);
    }
    if (in.contains("complex")) {
        const json& v = in.at("complex");
        inputs["complex"] = v;
        if (v.is_string()) return parse_complex_text(r, v.get<std::string>());
        return complex_from_json(r, v);
    }
    throw domain_error("missing complex input");
}

ThomasonFiltration get_filtration(const CyclicRing& r, const std::string& flag, const json& in,
                                  json& inputs) {
    if (!flag.empty()) {
        json j = parse_json_flag(flag, "filtration");
        inputs["filtration"] = j;
        return filtration_from_json(r, j);
    }
    if (in.contains("filtration")) {
        inputs["filtration"] = in.at("filtration");
        return filtration_from_json(r, in.at("filtration"));
    }
    throw domain_error("missing filtration input");
}

std::pair<int, int> parse_window(const std::string& s) {
    auto pos = s.find(':');
    try {
        if (pos != std::string::npos)
            return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 1))};
    } catch (...) {
    }
    throw domain_error("window must be a:b");
}

json chain_map_json(const ChainMap& f) {
    json comps = json::object();
    for (const auto& [n, m] : f.components) comps[std::to_string(n)] = to_json(m);
    return json{{"components", comps}};
}

std::string graded_text(const GradedModule& h) {
    if (h.is_zero()) return "0";
    std::string out;
    for (const auto& [n, m] : h.parts) {
        if (!out.empty()) out += ", ";
        out += "H^" + std::to_string(n) + " = ";
        std::string mod;
        for (const Int& f : m.canonical().factors) {
            if (!mod.empty()) mod += " + ";
            mod += "Z/" + f.str();
        }
        out += mod;
    }
    return out;
}

int run_complex_verb(const char* verb, const Complex& x, const json& inputs, const Emit& e) {
    json doc = envelope(verb, inputs);
    doc["ring"] = to_json(x.ring);
    doc["complex"] = to_json(x);
    GradedModule h = cohomology(x);
    doc["cohomology"] = to_json(h);
    std::string text = std::string(verb) + " over Z/" + x.ring.modulus.str() + ": " +
                       graded_text(h) + "\n";
    emit(doc, text, e);
    return 0;
}

int run_member(const CyclicRing& r, const Complex& x, const ThomasonFiltration& f,
               const std::string& side, json inputs, const Emit& e) {
    if (side != "aisle" && side != "coaisle") throw domain_error("side must be aisle or coaisle");
    inputs["side"] = side;
    AisleReport aisle = in_aisle(x, f);
    CoaisleReport cech = in_coaisle_cech(x, f);
    CoaisleReport hom = in_coaisle_hom(x, f);
    bool reduced = in_coaisle_reduced(x, f);
    bool agreement = cech.ok == hom.ok && hom.ok == reduced;
    json doc = envelope("member", inputs);
    doc["ring"] = to_json(r);
    doc["filtration"] = to_json(f);
    doc["complex"] = to_json(x);
    doc["side"] = side;
    doc["verdicts"] = json{{"aisle", aisle.ok},
                           {"coaisle_cech", cech.ok},
                           {"coaisle_hom", hom.ok},
                           {"coaisle_reduced", reduced}};
    doc["agreement"] = agreement;
    doc["member"] = side == "aisle" ? aisle.ok : reduced;
    if (cech.witness_divisor)
        doc["witness"] = json{{"divisor", cech.witness_divisor->convert_to<long long>()},
                              {"degree", *cech.witness_degree}};
    std::string text = std::string("member(") + side + "): " +
                       (doc["member"].get<bool>() ? "yes" : "no") +
                       "  [aisle " + (aisle.ok ? "y" : "n") + ", cech " + (cech.ok ? "y" : "n") +
                       ", hom " + (hom.ok ? "y" : "n") + ", reduced " + (reduced ? "y" : "n") +
                       ", agreement " + (agreement ? "y" : "n") + "]\n";
    emit(doc, text, e);
    return agreement ? 0 : 3;
}

int run_truncate(const CyclicRing& r, const Complex& x, const ThomasonFiltration& f, json inputs,
                 const Emit& e) {
    TruncationTriangle t = truncate_t(x, f);
    json doc = envelope("truncate", inputs);
    doc["ring"] = to_json(r);
    doc["filtration"] = to_json(f);
    doc["input"] = to_json(t.input);
    doc["u_part"] = to_json(t.u_part);
    doc["v_part"] = to_json(t.v_part);
    doc["to_input"] = chain_map_json(t.to_input);
    doc["to_v"] = chain_map_json(t.to_v);
    doc["evidence"] =
        json{{"u_ok", t.u_ok}, {"v_ok", t.v_ok}, {"triangle_ok", t.triangle_ok}};
    std::string text = "truncate: U " + graded_text(cohomology(t.u_part)) + " | V " +
                       graded_text(cohomology(t.v_part)) + "\n";
    emit(doc, text, e);
    return 0;
}

int run_classify(const CyclicRing& r, const std::string& gens_flag, const json& in,
                 const Emit& e) {
    json inputs = json::object();
    std::vector<Complex> gens;
    if (!gens_flag.empty()) {
        inputs["gens"] = gens_flag;
        gens = parse_complex_list(r, gens_flag);
    } else if (in.contains("gens")) {
        const json& v = in.at("gens");
        inputs["gens"] = v;
        if (v.is_string()) {
            gens = parse_complex_list(r, v.get<std::string>());
        } else if (v.is_array()) {
            for (const json& g : v) gens.push_back(complex_from_json(r, g));
        } else {
            throw domain_error("/gens: expected string or array");
        }
    } else {
        throw domain_error("missing gens input");
    }
    ThomasonFiltration f = filtration_of_generators(r, gens);
    json doc = envelope("classify", inputs);
    doc["ring"] = to_json(r);
    doc["filtration"] = to_json(f);
    std::string text = "classify: " + to_json(f).dump() + "\n";
    emit(doc, text, e);
    return 0;
}

int run_generate(const CyclicRing& r, const ThomasonFiltration& f, json inputs, const Emit& e) {
    std::vector<Complex> gens = generators_of(f);
    json doc = envelope("generate", inputs);
    doc["ring"] = to_json(r);
    doc["filtration"] = to_json(f);
    json arr = json::array();
    for (const Complex& g : gens) arr.push_back(to_json(g));
    doc["generators"] = arr;
    std::string text = "generate: " + std::to_string(gens.size()) + " generators\n";
    emit(doc, text, e);
    return 0;
}

int run_resolve(const CyclicRing& r, const Complex& x, const ThomasonFiltration& f, int depth,
                json inputs, const Emit& e) {
    inputs["depth"] = depth;
    std::vector<CoresolutionStep> steps = coresolve_in_coaisle(x, f, depth);
    json doc = envelope("resolve", inputs);
    doc["ring"] = to_json(r);
    doc["filtration"] = to_json(f);
    json arr = json::array();
    bool all_ok = true;
    for (const CoresolutionStep& s : steps) {
        arr.push_back(json{{"degree", s.degree},
                           {"envelope", to_json(s.envelope)},
                           {"stalk_ok", s.stalk_ok}});
        all_ok = all_ok && s.stalk_ok;
    }
    doc["steps"] = arr;
    std::string text =
        "resolve: " + std::to_string(steps.size()) + " steps, stalks " + (all_ok ? "ok" : "BAD") +
        "\n";
    emit(doc, text, e);
    return all_ok ? 0 : 3;
}

int run_enumerate(const CyclicRing& r, const std::string& window, bool with_neg, bool with_pos,
                  const Emit& e) {
    auto [lo, hi] = parse_window(window);
    json inputs{{"window", {lo, hi}}, {"neg_inf", with_neg}, {"pos_inf", with_pos}};
    std::vector<ThomasonFiltration> fs = enumerate_filtrations(r, lo, hi, with_neg, with_pos);
    json doc = envelope("enumerate", inputs);
    doc["ring"] = to_json(r);
    doc["count"] = fs.size();
    json arr = json::array();
    for (const ThomasonFiltration& f : fs) arr.push_back(to_json(f));
    doc["filtrations"] = arr;
    std::string text = "enumerate: " + std::to_string(fs.size()) + " filtrations\n";
    emit(doc, text, e);
    return 0;
}

int run_selftest(const SuiteConfig& cfg, const Emit& e) {
    json inputs{{"config", to_json(cfg)}};
    SuiteReport rep = run_suite(cfg);
    json doc = envelope("selftest", inputs);
    doc["config"] = to_json(cfg);
    doc["report"] = to_json(rep);
    std::string text = "selftest: " + std::to_string(rep.cases) + " cases, " +
                       std::to_string(rep.passed) + " passed, " + std::to_string(rep.failed) +
                       " failed (seed " + std::to_string(rep.seed) + ", " +
                       std::to_string(rep.wall_ms) + " ms)\n";
    emit(doc, text, e);
    return rep.failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for t-structures on derived categories of Z/n"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TSLAB_VERSION);

    long long ring_n = 0;
    std::string in_path, complex_flag, filtration_flag, gens_flag, side = "coaisle";
    std::string window = "-2:2", rings_csv, properties_csv;
    Emit em;
    int depth = 5, jobs = 1;
    std::uint64_t seed = 1;
    std::size_t corpus = 0;
    bool with_neg = false, with_pos = false, quick = false;
    std::vector<long long> gens_pos;
    std::vector<std::string> frags;  // shell/CMake may split shorthand at parentheses

    auto add_common = [&](CLI::App* cmd, bool needs_ring) {
        auto* r = cmd->add_option("--ring", ring_n, "modulus n of the base ring Z/n");
        if (needs_ring) r->required();
        cmd->add_option("--in", in_path, "input JSON document ('-' = stdin)");
        cmd->add_option("--out", em.out_path, "write the report here instead of stdout");
        cmd->add_option("--format", em.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}));
    };

    CLI::App* koszul_cmd = app.add_subcommand("koszul", "Koszul complex on ring elements");
    add_common(koszul_cmd, true);
    koszul_cmd->add_option("gens", gens_pos, "generator elements");

    CLI::App* cech_cmd = app.add_subcommand("cech", "reduced Cech complex of a ring element");
    add_common(cech_cmd, true);
    cech_cmd->add_option("gens", gens_pos, "ring element")->expected(1);

    auto add_fragments = [&](CLI::App* cmd) {
        cmd->add_option("fragments", frags, "continuation of a split --complex/--gens value");
    };

    CLI::App* coh_cmd = app.add_subcommand("cohomology", "cohomology of a complex");
    add_common(coh_cmd, true);
    coh_cmd->add_option("--complex", complex_flag, "complex JSON or shorthand");
    add_fragments(coh_cmd);

    CLI::App* member_cmd = app.add_subcommand("member", "membership under every oracle");
    add_common(member_cmd, true);
    member_cmd->add_option("--complex", complex_flag, "complex JSON or shorthand");
    member_cmd->add_option("--filtration", filtration_flag, "filtration JSON");
    member_cmd->add_option("--side", side, "aisle|coaisle");
    add_fragments(member_cmd);

    CLI::App* trunc_cmd = app.add_subcommand("truncate", "truncation triangle of a complex");
    add_common(trunc_cmd, true);
    trunc_cmd->add_option("--complex", complex_flag, "complex JSON or shorthand");
    trunc_cmd->add_option("--filtration", filtration_flag, "filtration JSON");
    add_fragments(trunc_cmd);

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "filtration generated by a list of complexes");
    add_common(classify_cmd, true);
    classify_cmd->add_option("--gens", gens_flag, "complex list, e.g. [K(2)[-1], K(3)[0]]");
    add_fragments(classify_cmd);

    CLI::App* generate_cmd = app.add_subcommand("generate", "compact generators of a filtration");
    add_common(generate_cmd, true);
    generate_cmd->add_option("--filtration", filtration_flag, "filtration JSON");

    CLI::App* resolve_cmd =
        app.add_subcommand("resolve", "injective-stalk coresolution inside the coaisle");
    add_common(resolve_cmd, true);
    resolve_cmd->add_option("--complex", complex_flag, "complex JSON or shorthand");
    resolve_cmd->add_option("--filtration", filtration_flag, "filtration JSON");
    resolve_cmd->add_option("--depth", depth, "maximum number of steps");
    add_fragments(resolve_cmd);

    CLI::App* enum_cmd = app.add_subcommand("enumerate", "filtrations over a cutoff window");
    add_common(enum_cmd, true);
    enum_cmd->add_option("--window", window, "cutoff window a:b");
    enum_cmd->add_flag("--neg-inf", with_neg, "include the -inf cutoff");
    enum_cmd->add_flag("--pos-inf", with_pos, "include the +inf cutoff");

    CLI::App* self_cmd = app.add_subcommand("selftest", "run the property suite");
    add_common(self_cmd, false);
    auto* seed_opt = self_cmd->add_option("--seed", seed, "suite seed");
    auto* jobs_opt = self_cmd->add_option("--jobs", jobs, "parallel case workers");
    auto* window_opt = self_cmd->add_option("--window", window, "cutoff window a:b");
    auto* rings_opt = self_cmd->add_option("--rings", rings_csv, "comma-separated moduli");
    auto* corpus_opt = self_cmd->add_option("--corpus", corpus, "random complexes per ring");
    auto* props_opt =
        self_cmd->add_option("--properties", properties_csv, "comma-separated family names");
    self_cmd->add_flag("--quick", quick, "small corpus and window");

    int rc = 0;
    try {
        app.parse(argc, argv);
        json in = read_in_document(in_path);
        for (const std::string& s : frags) (gens_flag.empty() ? complex_flag : gens_flag) += s;

        if (*koszul_cmd) {
            CyclicRing r = make_ring(ring_n);
            if (gens_pos.empty() && in.contains("gens"))
                for (const json& v : in.at("gens")) gens_pos.push_back(v.get<long long>());
            if (gens_pos.empty()) throw domain_error("missing generator elements");
            std::vector<Int> xs(gens_pos.begin(), gens_pos.end());
            json inputs{{"ring", to_json(r)}, {"gens", gens_pos}};
            rc = run_complex_verb("koszul", koszul(r, xs), inputs, em);
        } else if (*cech_cmd) {
            CyclicRing r = make_ring(ring_n);
            if (gens_pos.empty() && in.contains("gens"))
                for (const json& v : in.at("gens")) gens_pos.push_back(v.get<long long>());
            if (gens_pos.size() != 1) throw domain_error("cech takes exactly one element");
            json inputs{{"ring", to_json(r)}, {"gens", gens_pos}};
            rc = run_complex_verb("cech", cech_tilde(r, {Int(gens_pos[0])}), inputs, em);
        } else if (*coh_cmd) {
            CyclicRing r = make_ring(ring_n);
            json inputs{{"ring", to_json(r)}};
            Complex x = get_complex(r, complex_flag, in, inputs);
            rc = run_complex_verb("cohomology", x, inputs, em);
        } else if (*member_cmd) {
            CyclicRing r = make_ring(ring_n);
            json inputs{{"ring", to_json(r)}};
            Complex x = get_complex(r, complex_flag, in, inputs);
            ThomasonFiltration f = get_filtration(r, filtration_flag, in, inputs);
            rc = run_member(r, x, f, side, inputs, em);
        } else if (*trunc_cmd) {
            CyclicRing r = make_ring(ring_n);
            json inputs{{"ring", to_json(r)}};
            Complex x = get_complex(r, complex_flag, in, inputs);
            ThomasonFiltration f = get_filtration(r, filtration_flag, in, inputs);
            rc = run_truncate(r, x, f, inputs, em);
        } else if (*classify_cmd) {
            CyclicRing r = make_ring(ring_n);
            rc = run_classify(r, gens_flag, in, em);
        } else if (*generate_cmd) {
            CyclicRing r = make_ring(ring_n);
            json inputs{{"ring", to_json(r)}};
            ThomasonFiltration f = get_filtration(r, filtration_flag, in, inputs);
            rc = run_generate(r, f, inputs, em);
        } else if (*resolve_cmd) {
            CyclicRing r = make_ring(ring_n);
            json inputs{{"ring", to_json(r)}};
            Complex x = get_complex(r, complex_flag, in, inputs);
            ThomasonFiltration f = get_filtration(r, filtration_flag, in, inputs);
            rc = run_resolve(r, x, f, depth, inputs, em);
        } else if (*enum_cmd) {
            CyclicRing r = make_ring(ring_n);
            rc = run_enumerate(r, window, with_neg, with_pos, em);
        } else if (*self_cmd) {
            SuiteConfig cfg;
            if (quick) {
                cfg.corpus = 5;
                cfg.window_lo = -1;
                cfg.window_hi = 1;
                cfg.degree_lo = -1;
                cfg.degree_hi = 1;
            }
            if (!in.empty()) cfg = suite_config_from_json(in);
            if (*seed_opt) cfg.seed = seed;
            if (*jobs_opt) cfg.jobs = jobs;
            if (*window_opt) {
                auto [lo, hi] = parse_window(window);
                cfg.window_lo = lo;
                cfg.window_hi = hi;
            }
            if (*corpus_opt) cfg.corpus = corpus;
            if (*rings_opt) {
                cfg.rings.clear();
                std::stringstream ss(rings_csv);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) cfg.rings.push_back(std::stoll(tok));
            }
            if (*props_opt) {
                cfg.properties.clear();
                std::stringstream ss(properties_csv);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    if (!tok.empty()) cfg.properties.push_back(tok);
            }
            if (ring_n != 0) cfg.rings = {ring_n};
            rc = run_selftest(cfg, em);
        }
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const tslab::internal_error& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
