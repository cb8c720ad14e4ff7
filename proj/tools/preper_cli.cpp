#include "preper/archimedean.hpp"
#include "preper/boundengine.hpp"
#include "preper/census.hpp"
#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"
#include "preper/report.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>

using namespace preper;

namespace {

struct Options {
    std::string c;
    std::string alpha = "0";
    std::vector<std::uint64_t> primes;
    double epsilon = 0.1;
    int t_max = 3;
    int n_max = 5;
    bool json = false;
    bool csv = false;
    double tol = 1e-12;
};

struct Inputs {
    Rational c;
    Rational alpha;
    PlaceSet S;
};

Inputs parse_inputs(const Options& o) {
    return {parse_rational(o.c), parse_rational(o.alpha), PlaceSet(o.primes)};
}

void require_alpha_zero(const Inputs& in, const char* verb) {
    if (in.alpha != 0)
        throw std::invalid_argument(std::string(verb) + ": distance bounds are computed at the critical point; use --alpha 0");
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

struct DeltaSet {
    std::optional<ArchDeltaReport> arch;
    std::vector<NonArchDelta> finite;
    std::vector<std::uint64_t> bad;
};

// Archimedean failure propagates as HypothesisUnverified.
DeltaSet collect_deltas(const Inputs& in, const Options& o, double hhat0) {
    DeltaSet ds;
    ds.arch = arch_delta_bound(in.c, o.epsilon, o.t_max, hhat0);
    auto bad = bad_primes(in.c);
    std::vector<std::uint64_t> good;
    for (auto p : in.S.finite_primes()) {
        if (std::find(bad.begin(), bad.end(), p) != bad.end())
            ds.bad.push_back(p);
        else
            good.push_back(p);
    }
    ds.finite = nonarch_deltas(in.c, good);
    return ds;
}

std::vector<DeltaBound> flatten(const DeltaSet& ds) {
    std::vector<DeltaBound> out;
    if (ds.arch) out.push_back(ds.arch->best);
    for (const auto& d : ds.finite) out.push_back(d.to_delta_bound());
    return out;
}

int cmd_height(const Options& o) {
    Inputs in = parse_inputs(o);
    CanonicalHeight h = canonical_height(in.alpha, in.c, o.tol);
    bool preper = is_preperiodic(in.alpha, in.c);
    if (o.json) {
        json j = to_json(h);
        j["c"] = to_string(in.c);
        j["alpha"] = to_string(in.alpha);
        j["preperiodic"] = preper;
        print_json(j);
        return 0;
    }
    if (o.csv) {
        std::printf("place,value_nats,error,method\n");
        for (const auto& l : h.locals)
            std::printf("%s,%.17g,%.3g,%s\n", l.place.to_string().c_str(), l.value, l.error, to_string(l.method).c_str());
        return 0;
    }
    std::printf("c = %s, alpha = %s\n", to_string(in.c).c_str(), to_string(in.alpha).c_str());
    std::printf("%-8s %-22s %-10s %s\n", "place", "local height (nats)", "error", "method");
    for (const auto& l : h.locals)
        std::printf("%-8s %-22.15f %-10.2g %s\n", l.place.to_string().c_str(), l.value, l.error,
                    to_string(l.method).c_str());
    std::printf("canonical height = %.15f +- %.2g nats%s\n", h.value, h.error, preper ? " (alpha is preperiodic)" : "");
    return 0;
}

int cmd_delta(const Options& o) {
    Inputs in = parse_inputs(o);
    require_alpha_zero(in, "delta");
    CanonicalHeight h0 = canonical_height(Rational(0), in.c, o.tol);
    DeltaSet ds = collect_deltas(in, o, std::max(0.0, h0.value + h0.error));
    auto all = flatten(ds);
    if (o.json) {
        json fin = json::array();
        for (const auto& d : ds.finite) fin.push_back(to_json(d));
        print_json({{"c", to_string(in.c)},
                    {"arch", to_json(*ds.arch)},
                    {"finite", fin},
                    {"bad_primes_in_S", ds.bad}});
        return 0;
    }
    if (o.csv) {
        std::cout << deltas_csv(all);
        return 0;
    }
    std::printf("c = %s; delta >= exp(-bound), bounds rounded up, in nats\n", to_string(in.c).c_str());
    std::printf("%-6s %-14s %-22s %-22s %s\n", "place", "method", "-log delta <=", "delta >=", "exact");
    for (const auto& b : ds.arch->bounds)
        std::printf("%-6s %-14s %-22.15g %-22.15g\n", "inf", to_string(b.method).c_str(), b.neg_log_delta_upper,
                    b.delta_lower());
    for (const auto& d : ds.finite) {
        std::string exact = std::to_string(d.p) + "^-(" + std::to_string(d.val_num) +
                            (d.val_den == 1 ? "" : "/" + std::to_string(d.val_den)) + ")";
        std::printf("%-6lu %-14s %-22.15g %-22.15g %s (ell=%d, j=%d)\n", static_cast<unsigned long>(d.p),
                    to_string(d.kind).c_str(), d.neg_log(), d.to_delta_bound().delta_lower(), exact.c_str(), d.ell, d.j);
    }
    for (auto p : ds.bad) std::printf("%-6lu bad reduction: excluded from S~, counted in V\n", static_cast<unsigned long>(p));
    if (ds.arch->cycle)
        std::printf("attracting cycle: period %d, |multiplier| = %.12f\n", ds.arch->cycle->period,
                    std::abs(ds.arch->cycle->multiplier));
    return 0;
}

int cmd_bound(const Options& o) {
    Inputs in = parse_inputs(o);
    require_alpha_zero(in, "bound");
    json out = {{"c", to_string(in.c)}, {"S", in.S.to_string()}};
    std::optional<IntBoundDetail> ib;
    if (is_integer(in.c) && in.S.size() > 1) ib = int_bound_detail(in.S);
    BoundReport ub = uniform_bound(in.c, in.S, o.epsilon, o.t_max);

    // c-specific pipeline from certified hhat(0) and the computed deltas
    CanonicalHeight h0 = canonical_height(Rational(0), in.c, o.tol);
    double hlow = std::max(direct_height_floor(Rational(0), in.c), h0.value - h0.error);
    DeltaSet ds = collect_deltas(in, o, h0.value + h0.error);
    EquidistConstants ec = equidist_constants(in.c);
    BoundReport mb = main_bound(hlow, ub.S_tilde, flatten(ds), ec.C, ec.kappa, ec.V_size);

    if (o.json) {
        if (ib) out["int_bound"] = to_json(*ib);
        out["uniform_bound"] = to_json(ub);
        out["main_bound"] = to_json(mb);
        print_json(out);
        return 0;
    }
    if (o.csv) {
        std::printf("bound,log_value_nats,value\n");
        if (ib) std::printf("int_bound,%.17g,%s\n", ib->log_value, to_string(ib->bound).c_str());
        std::printf("uniform_bound,%.17g,%.17g\n", ub.log_P, ub.P);
        std::printf("main_bound,%.17g,%.17g\n", mb.log_P, mb.P);
        return 0;
    }
    std::printf("c = %s, S = %s (all bounds rounded up)\n", to_string(in.c).c_str(), in.S.to_string().c_str());
    if (ib)
        std::printf("integer bound: %s  (u = %.12f, e^{1+sqrt(2u)+u} = %s before ceiling)\n", to_string(ib->bound).c_str(),
                    ib->u, ib->value.c_str());
    std::printf("uniform bound: log P = %.12g nats, P = %.12g (u = %.9g, S~ = %s, |V| = %ld, C0 = %.9g)\n", ub.log_P,
                ub.P, ub.u, ub.S_tilde.to_string().c_str(), ub.V_size, ub.hhat);
    for (const auto& n : ub.notes) std::printf("  note: %s\n", n.c_str());
    std::printf("pipeline bound: P = %.12g (hhat(0) >= %.12g, C = %.6g, kappa = %.6g, u = %.9g)\n", mb.P, hlow, mb.C,
                mb.kappa, mb.u);
    return 0;
}

int cmd_census(const Options& o) {
    Inputs in = parse_inputs(o);
    if (o.n_max > 5) std::fprintf(stderr, "warning: n_max = %d factors polynomials of degree %d\n", o.n_max, 1 << o.n_max);
    CensusReport r = enumerate_preperiodic(in.c, in.alpha, in.S, o.n_max);
    if (o.json) {
        print_json(to_json(r));
        return 0;
    }
    if (o.csv) {
        std::cout << census_csv(r);
        return 0;
    }
    std::printf("c = %s, alpha = %s, S = %s, n_max = %d\n", to_string(r.c).c_str(), to_string(r.alpha).c_str(),
                r.S.to_string().c_str(), r.n_max);
    std::printf("%-3s %-3s %-6s %-12s %-10s %s\n", "n", "m", "degree", "g(0)", "S-integral", "min|beta-alpha| >=");
    for (const auto& orb : r.orbits)
        std::printf("%-3d %-3d %-6d %-12s %-10s %.12g\n", orb.n, orb.m, orb.degree, to_string(orb.factor.coeff(0)).c_str(),
                    orb.s_integral ? "yes" : "no", static_cast<double>(orb.arch_min_dist));
    std::printf("S-integral preperiodic points found: %ld\n", r.s_integral_count);
    return 0;
}

int cmd_sunits(const Options& o) {
    Inputs in = parse_inputs(o);
    CensusReport r = enumerate_preperiodic(in.c, in.alpha, in.S, o.n_max);
    VerifyReport v = verify_sunit_theorem(r);
    if (o.json) {
        json j = to_json(r);
        print_json({{"sunit_values", j["sunit_values"]},
                    {"theorem15_lhs", r.theorem15_lhs},
                    {"theorem15_rhs", r.theorem15_rhs},
                    {"checks", to_json(v)}});
        return v.all_pass() ? 0 : 1;
    }
    if (o.csv) {
        std::printf("value,witnesses\n");
        for (const auto& s : r.sunit_values) {
            std::string w;
            for (auto [n, m] : s.witnesses) w += (w.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(m);
            std::printf("%s,%s\n", to_string(s.value).c_str(), w.c_str());
        }
        return v.all_pass() ? 0 : 1;
    }
    std::printf("S-unit differences f^n(alpha) - f^m(alpha), n <= %d:", o.n_max);
    for (const auto& s : r.sunit_values) std::printf(" %s", to_string(s.value).c_str());
    std::printf("\n");
    for (const auto& l : v.checks) std::printf("%s %s: %s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.detail.c_str());
    return v.all_pass() ? 0 : 1;
}

int cmd_verify(const Options& o) {
    Inputs in = parse_inputs(o);
    VerifyReport all;
    auto append = [&](const VerifyReport& r) { all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end()); };
    append(verify_distinct_roots(in.c, o.n_max));
    bool has_bad = false;
    for (auto p : bad_primes(in.c)) has_bad |= !in.S.contains_prime(p);
    if (!has_bad) append(verify_sunit_theorem(in.c, in.alpha, in.S, o.n_max));
    if (in.alpha == 0) {
        CanonicalHeight h0 = canonical_height(Rational(0), in.c, o.tol);
        DeltaSet ds = collect_deltas(in, o, h0.value + h0.error);
        append(verify_delta_soundness(in.c, in.alpha, flatten(ds), o.n_max, 1e-8));
    }
    if (o.json) {
        print_json(to_json(all));
    } else {
        for (const auto& l : all.checks)
            std::printf("%s %s: %s\n", l.pass ? "PASS" : "FAIL", l.name.c_str(), l.detail.c_str());
        if (has_bad) std::printf("note: S lacks a bad prime of c, S-unit checks skipped\n");
    }
    return all.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preperiodic points of z^2 + c: heights, distance bounds, counting bounds and census"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--c", o.c, "parameter c (integer or a/b)")->required();
        sub->add_option("--alpha", o.alpha, "base point alpha (default 0)");
        sub->add_option("--primes", o.primes, "finite primes of S, comma separated")->delimiter(',');
        sub->add_option("--epsilon", o.epsilon, "escape-rate threshold epsilon (default 0.1)");
        sub->add_option("--t-max", o.t_max, "maximal attracting-cycle period (default 3)");
        sub->add_option("--n-max", o.n_max, "census depth (default 5, at most 6)");
        sub->add_option("--tol", o.tol, "height tolerance (default 1e-12)");
        sub->add_flag("--json", o.json, "JSON output");
        sub->add_flag("--csv", o.csv, "CSV output");
    };

    std::map<std::string, int (*)(const Options&)> verbs = {{"height", cmd_height}, {"delta", cmd_delta},
                                                             {"bound", cmd_bound},   {"census", cmd_census},
                                                             {"sunits", cmd_sunits}, {"verify", cmd_verify}};
    std::map<std::string, std::string> help = {{"height", "local and canonical heights of alpha"},
                                               {"delta", "distance lower bounds from 0 to preperiodic points"},
                                               {"bound", "counting bounds for S-integral preperiodic points"},
                                               {"census", "enumerate preperiodic orbits of f^n - f^m"},
                                               {"sunits", "S-unit differences and the S-unit count bound"},
                                               {"verify", "census-based soundness checks"}};
    std::vector<CLI::App*> subs;
    for (const auto& [name, fn] : verbs) {
        auto* sub = app.add_subcommand(name, help[name]);
        add_common(sub);
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);
    try {
        for (auto* sub : subs)
            if (sub->parsed()) return verbs[sub->get_name()](o);
    } catch (const HypothesisUnverified& e) {
        std::fprintf(stderr, "hypothesis unverified: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
