#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

#include "formring/json_io.hpp"
#include "formring/sampling.hpp"

using namespace formring;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned long default_seed() {
    if (const char* env = std::getenv("FORMRING_SEED")) {
        try {
            return std::stoul(env);
        } catch (const std::exception&) {
            throw UsageError("FORMRING_SEED is not a number");
        }
    }
    return 1;
}

RingPtr context_from_flags(const std::string& mod) {
    if (mod.empty()) return Ring::integers();
    try {
        return Ring::integers_mod(mpz_class(mod));
    } catch (const std::exception&) {
        throw UsageError("invalid modulus: " + mod);
    }
}

/// Coefficient literal f_0,...,f_n; parse errors report the offset of the
/// offending coefficient.
BinaryForm parse_form_literal(const std::string& text, int n, const RingPtr& ring, int twist) {
    std::vector<Value> coeffs;
    std::size_t pos = 0;
    int index = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        std::string part = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            coeffs.push_back(ring->parse(part));
        } catch (const std::exception& e) {
            throw UsageError("coefficient " + std::to_string(index) + " at position " +
                             std::to_string(pos) + ": " + e.what());
        }
        ++index;
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (coeffs.size() != static_cast<std::size_t>(n) + 1)
        throw UsageError("expected " + std::to_string(n + 1) + " coefficients f_0,...,f_" +
                         std::to_string(n) + ", got " + std::to_string(coeffs.size()));
    return make_form(n, ring, std::move(coeffs), twist);
}

std::string coords_str(std::span<const Value> coords) {
    std::string s;
    bool any = false;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        if (coords[k].is_zero()) continue;
        std::string term = coords[k].str();
        if (k > 0) {
            if (term == "1")
                term = "";
            else if (term == "-1")
                term = "-";
            else
                term += "*";
            term += "zeta_" + std::to_string(k);
        }
        if (any && term.front() != '-') s += " + ";
        else if (any) {
            s += " - ";
            term = term.substr(1);
        }
        s += term;
        any = true;
    }
    return any ? s : "0";
}

void print_mult_table_text(const MultTable& t, std::ostream& os) {
    for (int i = 1; i < t.n; ++i)
        for (int j = i; j < t.n; ++j)
            os << "zeta_" << i << "*zeta_" << j << " = " << coords_str(t.product(i, j)) << "\n";
}

void print_action_table_text(const ActionTable& t, std::ostream& os) {
    os << "module level " << t.level << " (basis b_0..b_" << t.n - 1 << ")\n";
    for (int i = 1; i < t.n; ++i)
        for (int j = 0; j < t.n; ++j) {
            os << "zeta_" << i << "*b_" << j << " =";
            bool any = false;
            for (int k = 0; k < t.n; ++k) {
                const Value& v = t.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]
                                    [static_cast<std::size_t>(k)];
                if (v.is_zero()) continue;
                os << " " << (any ? "+ " : "") << "(" << v.str() << ")*b_" << k;
                any = true;
            }
            if (!any) os << " 0";
            os << "\n";
        }
}

struct CommonOpts {
    int n = 0;
    std::string form_literal;
    bool universal = false;
    std::string mod;
    std::string format = "text";
    int twist = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool need_form = true) {
    cmd->add_option("--n", o.n, "degree of the form")->required();
    if (need_form) {
        cmd->add_option("--form", o.form_literal, "coefficients f_0,...,f_n (comma separated)");
        cmd->add_flag("--universal", o.universal, "use the universal form over Z[f_0..f_n]");
        cmd->add_option("--mod", o.mod, "work over the integers mod this value");
    }
    cmd->add_option("--format", o.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--twist", o.twist, "twist tag (default -1)");
}

BinaryForm resolve_form(const CommonOpts& o) {
    if (o.universal) {
        if (!o.mod.empty()) throw UsageError("--universal and --mod are exclusive");
        return universal_form(o.n, o.twist);
    }
    if (o.form_literal.empty()) throw UsageError("either --form or --universal is required");
    return parse_form_literal(o.form_literal, o.n, context_from_flags(o.mod), o.twist);
}

int cmd_ring(const CommonOpts& o) {
    BinaryForm f = resolve_form(o);
    MultTable t = build_ring(f);
    if (o.format == "json")
        std::cout << mult_table_to_json(t).dump() << "\n";
    else
        print_mult_table_text(t, std::cout);
    return 0;
}

int cmd_ideal(const CommonOpts& o, int k) {
    BinaryForm f = resolve_form(o);
    ActionTable t = build_module(f, k);
    if (o.format == "json")
        std::cout << action_table_to_json(t).dump() << "\n";
    else
        print_action_table_text(t, std::cout);
    return 0;
}

int cmd_disc(const CommonOpts& o) {
    BinaryForm f = resolve_form(o);
    Value df = disc_form(f);
    Value dr = ring_disc(build_ring(f));
    bool equal = df == dr;
    if (o.format == "json") {
        Json j;
        j["disc_form"] = value_to_json(df);
        j["ring_disc"] = value_to_json(dr);
        j["equal"] = equal;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "disc_form: " << df.str() << "\nring_disc: " << dr.str() << "\n"
                  << (equal ? "equal" : "NOT EQUAL") << "\n";
    }
    return equal ? 0 : kExitVerifyFail;
}

int cmd_props(const CommonOpts& o) {
    BinaryForm f = resolve_form(o);
    bool prim = is_primitive(f);
    bool zero = f.is_zero();
    std::optional<bool> invertible, gorenstein;
    if (!zero && f.ring->kind() == RingKind::Integers) {
        invertible = is_invertible_family(f);
        if (f.n >= 3) gorenstein = is_gorenstein(f);
    }
    if (o.format == "json") {
        Json j;
        j["form"] = form_to_json(f)["coeffs"];
        j["primitive"] = prim;
        j["invertible"] = invertible ? Json(*invertible) : Json(nullptr);
        j["gorenstein"] = gorenstein ? Json(*gorenstein) : Json(nullptr);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "primitive:" << (prim ? "true" : "false");
        if (invertible) std::cout << " invertible:" << (*invertible ? "true" : "false");
        if (gorenstein) std::cout << " gorenstein:" << (*gorenstein ? "true" : "false");
        std::cout << "\n";
    }
    return 0;
}

struct RoundtripOutcome {
    bool form_ok = false;
    bool tables_ok = false;
    std::string detail;
};

RoundtripOutcome roundtrip_once(const BinaryForm& f, unsigned long seed) {
    RoundtripOutcome out;
    BasedPair bp = form_to_pair(f);
    BinaryForm back = pair_to_form(bp, seed);
    out.form_ok = back.coeffs == f.coeffs;
    if (!out.form_ok) {
        for (int i = 0; i <= f.n; ++i)
            if (back.coeff(i) != f.coeff(i)) {
                out.detail = "coefficient a_" + std::to_string(i) + ": expected " +
                             f.coeff(i).str() + ", got " + back.coeff(i).str();
                break;
            }
        return out;
    }
    BasedPair rec = reconstruct_from_coefficients(bp.a, f.n, f.ring);
    out.tables_ok = rec == bp;
    if (!out.tables_ok) {
        for (int i = 1; i < f.n && out.detail.empty(); ++i)
            for (int j = 1; j < f.n && out.detail.empty(); ++j)
                if (rec.pair.r.product(i, j) != bp.pair.r.product(i, j))
                    out.detail = "multiplication entry (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") differs";
        for (int i = 1; i < f.n && out.detail.empty(); ++i)
            for (int j = 0; j < f.n && out.detail.empty(); ++j)
                if (rec.pair.i.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] !=
                    bp.pair.i.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)])
                    out.detail = "action entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") differs";
    }
    return out;
}

int cmd_roundtrip(const CommonOpts& o, bool random, int trials, unsigned long seed) {
    if (o.n < 3) throw UsageError("round trips need degree at least 3");
    int failures = 0;
    auto run_one = [&](const BinaryForm& f) {
        RoundtripOutcome r = roundtrip_once(f, seed);
        if (!(r.form_ok && r.tables_ok)) {
            ++failures;
            std::cout << "FAIL " << f.str() << ": " << r.detail << "\n";
        }
    };
    if (random) {
        FormSampler sampler(seed);
        for (int t = 0; t < trials; ++t) run_one(sampler.form(o.n, 50));
        std::cout << (failures == 0 ? "pass" : "fail") << " (" << trials - failures << "/"
                  << trials << " random trials)\n";
    } else {
        BinaryForm f = resolve_form(o);
        run_one(f);
        if (failures == 0) std::cout << "pass\n";
    }
    return failures == 0 ? 0 : kExitVerifyFail;
}

struct SuiteReport {
    int checks = 0;
    int failed = 0;
    void note(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failed;
            std::cout << "FAIL " << what << "\n";
        }
    }
};

int suite_universal(int n, SuiteReport& rep) {
    BinaryForm u = universal_form(n);
    MultTable r = build_ring(u);
    rep.note(r.check_axioms().empty(), "universal ring axioms n=" + std::to_string(n));
    for (int k = -1; k <= n - 1; ++k) {
        ActionTable m = build_module(u, k);
        rep.note(m.check_module_axiom(r).empty(),
                 "universal module axiom n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
    if (n <= 4)
        rep.note(ring_disc(r) == disc_form(u),
                 "universal discriminant identity n=" + std::to_string(n));
    return 0;
}

int suite_random(int n, int trials, unsigned long seed, SuiteReport& rep) {
    FormSampler sampler(seed);
    for (int t = 0; t < trials; ++t) {
        BinaryForm f = sampler.form(n, 50);
        MultTable r = build_ring(f);
        rep.note(r.check_axioms().empty(), "ring axioms for " + f.str());
        rep.note(ring_disc(r) == disc_form(f), "discriminant equality for " + f.str());
        if (!f.is_zero()) {
            bool prim = is_primitive(f);
            rep.note(is_invertible_family(f) == prim, "invertibility for " + f.str());
            if (n >= 3) rep.note(is_gorenstein(f) == prim, "Gorenstein for " + f.str());
        }
        if (n >= 3) {
            RoundtripOutcome rt = roundtrip_once(f, seed + static_cast<unsigned long>(t));
            rep.note(rt.form_ok && rt.tables_ok, "round trip for " + f.str());
        }
        for (long m : {2L, 3L, 5L}) {
            RingHom hom = RingHom::reduce_mod(f.ring, m);
            RingPtr zm = Ring::integers_mod(m);
            std::vector<Value> cm;
            for (const Value& c : f.coeffs) cm.push_back(zm->from_mpz(c.as_mpz()));
            BinaryForm fm = make_form(n, zm, cm, f.twist);
            rep.note(specialize_table(r, hom) == build_ring(fm),
                     "base change mod " + std::to_string(m) + " for " + f.str());
        }
    }
    return 0;
}

int suite_oracle(int n, int trials, unsigned long seed, SuiteReport& rep) {
    FormSampler sampler(seed);
    for (int t = 0; t < trials; ++t) {
        BinaryForm f = sampler.form_ends(n, 20);
        ThetaRing th(f);
        MultTable r = build_ring(f);
        bool ring_ok = true;
        for (int i = 1; i < n && ring_ok; ++i)
            for (int j = 1; j < n && ring_ok; ++j)
                ring_ok = th.to_mixed_basis(th.mul(th.zeta(i), th.zeta(j)), 0) == r.product(i, j);
        rep.note(ring_ok, "table vs oracle products for " + f.str());
        for (int k = -1; k <= n - 1; ++k) {
            ActionTable m = build_module(f, k);
            auto basis = th.mixed_basis(k);
            bool mod_ok = true;
            for (int i = 1; i < n && mod_ok; ++i)
                for (int j = 0; j < n && mod_ok; ++j)
                    mod_ok = th.to_mixed_basis(th.mul(th.zeta(i), basis[static_cast<std::size_t>(j)]), k) ==
                             m.d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)];
            rep.note(mod_ok, "action vs oracle k=" + std::to_string(k) + " for " + f.str());
            QfSpan sections(th, global_sections(f, k));
            rep.note(sections == module_span(th, k),
                     "global sections span k=" + std::to_string(k) + " for " + f.str());
        }
        auto rs = ring_span(th);
        auto ib = th.mixed_basis(1);
        QfSpan colon = colon_span(th, rs, ib);
        rep.note(colon == module_span(th, -1), "colon module (R : I) for " + f.str());
    }
    return 0;
}

int cmd_verify(const std::string& suite, int n, int trials, unsigned long seed,
               const std::string& format) {
    SuiteReport rep;
    if (suite == "universal")
        suite_universal(n, rep);
    else if (suite == "random")
        suite_random(n, trials, seed, rep);
    else if (suite == "oracle")
        suite_oracle(n, trials, seed, rep);
    else
        throw UsageError("unknown suite: " + suite);
    if (format == "json") {
        Json j;
        j["suite"] = suite;
        j["n"] = n;
        j["checks"] = rep.checks;
        j["failed"] = rep.failed;
        j["passed"] = rep.failed == 0;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "suite " << suite << ": " << rep.checks - rep.failed << "/" << rep.checks
                  << " checks passed\n";
    }
    return rep.failed == 0 ? 0 : kExitVerifyFail;
}

int cmd_tabulate(int n, long height, const std::string& out, unsigned long seed) {
    const std::string cursor_path = out + ".cursor";
    long long skip = 0;
    {
        std::ifstream cf(cursor_path);
        if (cf) cf >> skip;
    }
    std::ofstream os(out, skip > 0 ? std::ios::app : std::ios::trunc);
    if (!os) throw UsageError("cannot open output file: " + out);

    std::vector<long> coeffs(static_cast<std::size_t>(n) + 1, -height);
    long long index = 0;
    bool done = false;
    while (!done) {
        if (index >= skip) {
            auto start = std::chrono::steady_clock::now();
            BinaryForm f = make_int_form(n, coeffs);
            Json rec;
            rec["v"] = 1;
            rec["n"] = n;
            Json arr = Json::array();
            for (long c : coeffs) arr.push_back(c);
            rec["form"] = arr;
            rec["context"] = "integers";
            rec["disc"] = value_to_json(disc_form(f));
            rec["primitive"] = is_primitive(f);
            rec["invertible"] = f.is_zero() ? Json(nullptr) : Json(is_invertible_family(f));
            rec["gorenstein"] =
                (f.is_zero() || n < 3) ? Json(nullptr) : Json(is_gorenstein(f));
            if (n >= 3) {
                RoundtripOutcome rt = roundtrip_once(f, seed);
                rec["roundtrip_form"] = rt.form_ok;
                rec["roundtrip_tables"] = rt.tables_ok;
            } else {
                rec["roundtrip_form"] = nullptr;
                rec["roundtrip_tables"] = nullptr;
            }
            auto stop = std::chrono::steady_clock::now();
            rec["ms"] = std::chrono::duration<double, std::milli>(stop - start).count();
            os << rec.dump() << "\n";
            os.flush();
            std::ofstream cf(cursor_path, std::ios::trunc);
            cf << (index + 1) << "\n";
        }
        ++index;
        // next coefficient vector in lexicographic order
        done = true;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] < height) {
                ++coeffs[i];
                for (std::size_t j = i + 1; j < coeffs.size(); ++j) coeffs[j] = -height;
                done = false;
                break;
            }
        }
    }
    std::cout << "wrote " << index << " records to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rings, modules and pairs attached to integral binary n-ic forms"};
    app.require_subcommand(1);

    CommonOpts ring_o, ideal_o, disc_o, props_o, rt_o;
    int ideal_k = 0;
    auto* c_ring = app.add_subcommand("ring", "multiplication table of the attached ring");
    add_common(c_ring, ring_o);
    auto* c_ideal = app.add_subcommand("ideal", "action table of the level-k module");
    add_common(c_ideal, ideal_o);
    c_ideal->add_option("--k", ideal_k, "module level in [-1, n-1]")->required();
    auto* c_disc = app.add_subcommand("disc", "form and ring discriminants");
    add_common(c_disc, disc_o);
    auto* c_props = app.add_subcommand("props", "primitivity, invertibility, Gorenstein");
    add_common(c_props, props_o);

    auto* c_rt = app.add_subcommand("roundtrip", "form -> pair -> form and back from coefficients");
    add_common(c_rt, rt_o);
    bool rt_random = false;
    int rt_trials = 100;
    unsigned long rt_seed = 0;
    c_rt->add_flag("--random", rt_random, "use random forms");
    c_rt->add_option("--trials", rt_trials, "number of random trials");
    auto* rt_seed_opt = c_rt->add_option("--seed", rt_seed, "random seed");

    auto* c_verify = app.add_subcommand("verify", "run a verification suite");
    std::string vf_suite, vf_format = "text";
    int vf_n = 0, vf_trials = 50;
    unsigned long vf_seed = 0;
    c_verify->add_option("--suite", vf_suite, "universal, random or oracle")->required();
    c_verify->add_option("--n", vf_n, "degree")->required();
    c_verify->add_option("--trials", vf_trials, "number of trials");
    auto* vf_seed_opt = c_verify->add_option("--seed", vf_seed, "random seed");
    c_verify->add_option("--format", vf_format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* c_tab = app.add_subcommand("tabulate", "write one JSONL record per form up to a height");
    int tab_n = 0;
    long tab_height = 1;
    std::string tab_out;
    unsigned long tab_seed = 0;
    c_tab->add_option("--n", tab_n, "degree")->required();
    c_tab->add_option("--height", tab_height, "coefficient bound")->required();
    c_tab->add_option("--out", tab_out, "output JSONL path")->required();
    auto* tab_seed_opt = c_tab->add_option("--seed", tab_seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*c_ring) return cmd_ring(ring_o);
        if (*c_ideal) return cmd_ideal(ideal_o, ideal_k);
        if (*c_disc) return cmd_disc(disc_o);
        if (*c_props) return cmd_props(props_o);
        if (*c_rt) {
            unsigned long seed = rt_seed_opt->count() ? rt_seed : default_seed();
            return cmd_roundtrip(rt_o, rt_random, rt_trials, seed);
        }
        if (*c_verify) {
            unsigned long seed = vf_seed_opt->count() ? vf_seed : default_seed();
            return cmd_verify(vf_suite, vf_n, vf_trials, seed, vf_format);
        }
        if (*c_tab) {
            unsigned long seed = tab_seed_opt->count() ? tab_seed : default_seed();
            return cmd_tabulate(tab_n, tab_height, tab_out, seed);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
