#include "preper/report.hpp"

#include <cmath>
#include <sstream>

namespace preper {

json number_json(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw std::invalid_argument("number_from_json: unexpected value " + s);
}

json to_json(const LocalHeight& h) {
    return {{"place", h.place.to_string()},
            {"value", number_json(h.value)},
            {"error", number_json(h.error)},
            {"method", to_string(h.method)}};
}

json to_json(const CanonicalHeight& h) {
    json locals = json::array();
    for (const auto& l : h.locals) locals.push_back(to_json(l));
    return {{"value", number_json(h.value)}, {"error", number_json(h.error)}, {"unit", "nats"}, {"locals", locals}};
}

json to_json(const HeightConstants& hc) {
    return {{"N", hc.N},
            {"r", hc.r},
            {"s", hc.s},
            {"C1", number_json(hc.C1)},
            {"log_C1", number_json(hc.log_C1)},
            {"C2", number_json(hc.C2)},
            {"C0", number_json(hc.C0)}};
}

json to_json(const DeltaBound& d) {
    json j = {{"place", d.place.to_string()},
              {"neg_log_delta_upper", number_json(d.neg_log_delta_upper)},
              {"delta_lower", number_json(d.delta_lower())},
              {"method", to_string(d.method)},
              {"certified", d.certified}};
    if (!d.place.is_infinite()) {
        j["val_num"] = d.val_num;
        j["val_den"] = d.val_den;
    }
    return j;
}

json to_json(const NonArchDelta& d) {
    return {{"p", d.p},
            {"val_num", d.val_num},
            {"val_den", d.val_den},
            {"case", to_string(d.kind)},
            {"ell", d.ell},
            {"j", d.j},
            {"neg_log_delta_upper", number_json(d.neg_log())}};
}

json to_json(const ArchDeltaReport& r) {
    json bounds = json::array();
    for (const auto& b : r.bounds) bounds.push_back(to_json(b));
    json j = {{"bounds", bounds},
              {"best", to_json(r.best)},
              {"lambda0_lower", number_json(r.lambda0_lower)},
              {"eps_branch", r.eps_branch},
              {"uniform_upper", number_json(r.uniform_upper)}};
    if (r.cycle) {
        j["cycle"] = {{"period", r.cycle->period},
                      {"multiplier_abs", std::abs(r.cycle->multiplier)},
                      {"multiplier", {r.cycle->multiplier.real(), r.cycle->multiplier.imag()}},
                      {"residual", r.cycle->residual}};
    }
    return j;
}

json to_json(const BoundReport& r) {
    json terms = json::array(), log_terms = json::array(), inputs = json::array(), notes = json::array();
    for (double t : r.terms) terms.push_back(number_json(t));
    for (double t : r.log_terms) log_terms.push_back(number_json(t));
    for (const auto& d : r.inputs) inputs.push_back(to_json(d));
    for (const auto& n : r.notes) notes.push_back(n);
    json places = json::array();
    for (const auto& v : r.S_tilde) places.push_back(v.to_string());
    return {{"P", number_json(r.P)},
            {"log_P", number_json(r.log_P)},
            {"rounding", "upward"},
            {"u", number_json(r.u)},
            {"terms", terms},
            {"log_terms", log_terms},
            {"A", number_json(r.A)},
            {"B", number_json(r.B)},
            {"log_A", number_json(r.log_A)},
            {"log_B", number_json(r.log_B)},
            {"C", number_json(r.C)},
            {"kappa", number_json(r.kappa)},
            {"hhat", number_json(r.hhat)},
            {"V_size", r.V_size},
            {"S_tilde", places},
            {"inputs", inputs},
            {"notes", notes}};
}

json to_json(const IntBoundDetail& d) {
    return {{"bound", to_string(d.bound)},
            {"u", number_json(d.u)},
            {"log_value", number_json(d.log_value)},
            {"value_before_ceiling", d.value},
            {"rounding", "upward (MPFR, 256 bits)"}};
}

namespace {

json padic_json(const PadicDistance& pd) {
    auto opt = [](const std::optional<Rational>& v) -> json {
        if (!v) return "inf";
        return to_string(*v);
    };
    return {{"p", pd.p}, {"min_val", opt(pd.min_val)}, {"max_val", opt(pd.max_val)}};
}

}  // namespace

json to_json(const CensusReport& r) {
    json orbits = json::array();
    for (const auto& o : r.orbits) {
        json padic = json::array();
        for (const auto& pd : o.padic) padic.push_back(padic_json(pd));
        orbits.push_back({{"n", o.n},
                          {"m", o.m},
                          {"degree", o.degree},
                          {"factor", to_string(o.factor)},
                          {"constant_term", to_string(o.factor.coeff(0))},
                          {"s_integral", o.s_integral},
                          {"arch_min_dist", number_json(static_cast<double>(o.arch_min_dist))},
                          {"padic", padic}});
    }
    json sunits = json::array();
    for (const auto& s : r.sunit_values) {
        json w = json::array();
        for (auto [n, m] : s.witnesses) w.push_back({n, m});
        sunits.push_back({{"value", to_string(s.value)}, {"witnesses", w}});
    }
    return {{"c", to_string(r.c)},
            {"alpha", to_string(r.alpha)},
            {"S", r.S.to_string()},
            {"n_max", r.n_max},
            {"orbits", orbits},
            {"s_integral_count", r.s_integral_count},
            {"sunit_values", sunits},
            {"theorem15_lhs", r.theorem15_lhs},
            {"theorem15_rhs", number_json(r.theorem15_rhs)}};
}

json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& l : r.checks) checks.push_back({{"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    return {{"checks", checks}, {"all_pass", r.all_pass()}};
}

DeltaBound delta_bound_from_json(const json& j) {
    DeltaBound d;
    d.place = Place::parse(j.at("place").get<std::string>());
    d.neg_log_delta_upper = number_from_json(j.at("neg_log_delta_upper"));
    d.method = parse_delta_method(j.at("method").get<std::string>());
    d.certified = j.at("certified").get<bool>();
    if (j.contains("val_num")) {
        d.val_num = j.at("val_num").get<long>();
        d.val_den = j.at("val_den").get<long>();
    }
    return d;
}

BoundReport bound_report_from_json(const json& j) {
    BoundReport r;
    r.P = number_from_json(j.at("P"));
    r.log_P = number_from_json(j.at("log_P"));
    r.u = number_from_json(j.at("u"));
    for (std::size_t i = 0; i < 3; ++i) {
        r.terms[i] = number_from_json(j.at("terms").at(i));
        r.log_terms[i] = number_from_json(j.at("log_terms").at(i));
    }
    r.A = number_from_json(j.at("A"));
    r.B = number_from_json(j.at("B"));
    r.log_A = number_from_json(j.at("log_A"));
    r.log_B = number_from_json(j.at("log_B"));
    r.C = number_from_json(j.at("C"));
    r.kappa = number_from_json(j.at("kappa"));
    r.hhat = number_from_json(j.at("hhat"));
    r.V_size = j.at("V_size").get<long>();
    PlaceSet S;
    for (const auto& v : j.at("S_tilde")) S.insert(Place::parse(v.get<std::string>()));
    r.S_tilde = S;
    for (const auto& d : j.at("inputs")) r.inputs.push_back(delta_bound_from_json(d));
    for (const auto& n : j.at("notes")) r.notes.push_back(n.get<std::string>());
    return r;
}

std::string census_csv(const CensusReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "n,m,degree,constant_term,s_integral,arch_min_dist";
    std::vector<std::uint64_t> primes = r.S.finite_primes();
    for (auto p : primes) os << ",min_val_" << p << ",max_val_" << p;
    os << '\n';
    for (const auto& o : r.orbits) {
        os << o.n << ',' << o.m << ',' << o.degree << ',' << to_string(o.factor.coeff(0)) << ','
           << (o.s_integral ? "true" : "false") << ',' << static_cast<double>(o.arch_min_dist);
        for (const auto& pd : o.padic)
            os << ',' << (pd.min_val ? to_string(*pd.min_val) : "inf") << ','
               << (pd.max_val ? to_string(*pd.max_val) : "inf");
        os << '\n';
    }
    return os.str();
}

std::string deltas_csv(const std::vector<DeltaBound>& ds) {
    std::ostringstream os;
    os.precision(17);
    os << "place,method,neg_log_delta_upper,delta_lower,val_num,val_den\n";
    for (const auto& d : ds) {
        os << d.place.to_string() << ',' << to_string(d.method) << ',' << d.neg_log_delta_upper << ','
           << d.delta_lower() << ',';
        if (d.place.is_infinite())
            os << ",\n";
        else
            os << d.val_num << ',' << d.val_den << '\n';
    }
    return os.str();
}

}  // namespace preper
