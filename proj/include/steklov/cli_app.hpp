#pragma once

// Command-line front end: every library capability behind one subcommand,
// reported as JSON, CSV, or aligned text.  Output is deterministic for a
// fixed argument list so reports can be diffed byte for byte.

#include <atomic>
#include <array>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "steklov/ball_spectrum.hpp"
#include "steklov/galerkin.hpp"
#include "steklov/harmonic_spaces.hpp"
#include "steklov/radial_ode.hpp"
#include "steklov/sphere_moments.hpp"

namespace steklov {
namespace cli {

using Json = nlohmann::ordered_json;

enum class OutputFormat { pretty, json, csv };

struct Report {
    Json json = Json::object();
    std::vector<std::pair<std::string, std::string>> summary;  // pretty header lines
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int exit_code = 0;
};

namespace detail {

inline std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

inline void emit(const Report& rep, OutputFormat fmt, std::ostream& out) {
    if (fmt == OutputFormat::json) {
        out << rep.json.dump(2) << '\n';
        return;
    }
    if (fmt == OutputFormat::csv) {
        for (size_t c = 0; c < rep.header.size(); ++c)
            out << (c ? "," : "") << csv_escape(rep.header[c]);
        out << '\n';
        for (const auto& row : rep.rows) {
            for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
            out << '\n';
        }
        return;
    }
    for (const auto& [k, v] : rep.summary) out << k << ": " << v << '\n';
    if (rep.header.empty()) return;
    if (!rep.summary.empty()) out << '\n';
    std::vector<size_t> width(rep.header.size(), 0);
    for (size_t c = 0; c < rep.header.size(); ++c) width[c] = rep.header[c].size();
    for (const auto& row : rep.rows)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    const auto line = [&](const std::vector<std::string>& row) {
        for (size_t c = 0; c < row.size(); ++c)
            out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << row[c];
        out << '\n';
    };
    line(rep.header);
    std::string rule;
    for (size_t c = 0; c < rep.header.size(); ++c) {
        if (c) rule += "  ";
        rule.append(width[c], '-');
    }
    out << rule << '\n';
    for (const auto& row : rep.rows) line(row);
}

inline int thread_count_from_env() {
    const char* raw = std::getenv("STEKLOV_THREADS");
    if (raw == nullptr || *raw == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == nullptr || *end != '\0' || v < 1 || v > 256)
        throw std::invalid_argument("STEKLOV_THREADS must be an integer between 1 and 256");
    return static_cast<int>(v);
}

// Runs tasks[0..N) on `threads` workers; results land at their own index, so
// output order never depends on scheduling.
template <typename Task, typename Result>
inline void run_indexed(const std::vector<Task>& tasks, std::vector<Result>& results,
                        int threads, Result (*fn)(const Task&)) {
    results.resize(tasks.size());
    if (threads <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i) results[i] = fn(tasks[i]);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = std::min<int>(threads, static_cast<int>(tasks.size()));
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                results[i] = fn(tasks[i]);
        });
    for (auto& th : pool) th.join();
}

inline std::vector<Rational> parse_axes(const std::vector<std::string>& raw) {
    std::vector<Rational> axes;
    axes.reserve(raw.size());
    for (const auto& s : raw) axes.push_back(parse_rational(s));
    return axes;
}

inline std::string domain_name(const std::vector<std::string>& axes) {
    return axes.empty() ? "ball" : "ellipsoid";
}

}  // namespace detail

// ---- spectrum ----

inline Report cmd_spectrum(int n, int p, int k_max, bool with_multiplicities) {
    const std::vector<SpectrumEntry> entries =
        enumerate_spectrum(n, p, SpectrumOptions{k_max, with_multiplicities});
    Report rep;
    rep.json["subcommand"] = "spectrum";
    rep.json["n"] = n;
    rep.json["p"] = p;
    rep.json["max_k"] = k_max;
    rep.json["count"] = entries.size();
    Json arr = Json::array();
    for (const auto& e : entries) {
        Json row;
        row["family"] = to_string(e.family);
        row["k"] = e.k;
        row["p"] = e.p;
        row["eigenvalue"] = to_string(e.eigenvalue);
        row["multiplicity"] = e.multiplicity;
        row["sphere_hodge_eigenvalue"] = to_string(e.sphere_hodge_eigenvalue);
        arr.push_back(std::move(row));
    }
    rep.json["entries"] = std::move(arr);

    rep.summary = {{"subcommand", "spectrum"},
                   {"n", std::to_string(n)},
                   {"p", std::to_string(p)},
                   {"max_k", std::to_string(k_max)},
                   {"distinct eigenvalues", std::to_string(entries.size())}};
    rep.header = {"family", "k", "p", "eigenvalue", "multiplicity", "sphere_hodge"};
    for (const auto& e : entries)
        rep.rows.push_back({to_string(e.family), std::to_string(e.k), std::to_string(e.p),
                            to_string(e.eigenvalue), std::to_string(e.multiplicity),
                            to_string(e.sphere_hodge_eigenvalue)});
    return rep;
}

// ---- verify-ball ----

namespace detail {

struct VerifyTask {
    bool exact_family = false;
    int n = 0, k = 0, p = 0;
};

struct VerifyOutcome {
    std::string family, eigenvalue, message;
    int k = 0, p = 0, dimension = 0;
    bool verified = false;
};

inline VerifyOutcome run_verify_task(const VerifyTask& t) {
    VerifyOutcome o;
    o.k = t.k;
    o.p = t.p;
    if (t.exact_family)
        o.family = "exact";
    else
        o.family = t.p == 0 ? "function" : (t.p == t.n ? "volume" : "coexact");
    try {
        if (t.exact_family) {
            o.eigenvalue = to_string(nu_exact(t.n, t.k, t.p));
            const FormSubspace H = build_Hkp(t.n, t.k, t.p - 1);
            const FormSubspace gen = t.p - 1 == 0 ? H : split_H(H).second;
            o.dimension = gen.dim();
            for (const PForm& phi : gen.basis) build_exact_pair(t.n, t.k, t.p, phi);
        } else {
            o.eigenvalue = to_string(nu_coexact(t.n, t.k, t.p));
            const FormSubspace H = build_Hkp(t.n, t.k, t.p);
            const FormSubspace radial = t.p == 0 ? H : split_H(H).second;
            o.dimension = radial.dim();
            for (const PForm& xi : radial.basis) build_coexact_pair(t.n, t.k, t.p, xi);
        }
        o.verified = true;
    } catch (const std::exception& e) {
        o.verified = false;
        o.message = e.what();
    }
    return o;
}

}  // namespace detail

inline Report cmd_verify_ball(int n, int k_max) {
    if (n < 1) throw std::invalid_argument("boundary dimension must be at least 1");
    if (k_max < 0) throw std::invalid_argument("negative family index bound");
    const int threads = detail::thread_count_from_env();

    std::vector<detail::VerifyTask> tasks;
    for (int p = 0; p <= n; ++p)
        for (int k = (p == 0 ? 0 : 1); k <= k_max; ++k) tasks.push_back({false, n, k, p});
    for (int p = 1; p <= n; ++p)
        for (int k = 1; k <= k_max; ++k) tasks.push_back({true, n, k, p});

    std::vector<detail::VerifyOutcome> outcomes;
    detail::run_indexed(tasks, outcomes, threads, detail::run_verify_task);

    bool all = true;
    int forms = 0;
    for (const auto& o : outcomes) {
        all = all && o.verified;
        forms += o.dimension;
    }

    Report rep;
    rep.exit_code = all ? 0 : 1;
    rep.json["subcommand"] = "verify-ball";
    rep.json["n"] = n;
    rep.json["max_k"] = k_max;
    rep.json["eigenforms_verified"] = forms;
    rep.json["all_verified"] = all;
    Json arr = Json::array();
    for (const auto& o : outcomes) {
        Json row;
        row["family"] = o.family;
        row["k"] = o.k;
        row["p"] = o.p;
        row["dimension"] = o.dimension;
        row["eigenvalue"] = o.eigenvalue;
        row["verified"] = o.verified;
        if (!o.message.empty()) row["message"] = o.message;
        arr.push_back(std::move(row));
    }
    rep.json["groups"] = std::move(arr);

    rep.summary = {{"subcommand", "verify-ball"},
                   {"n", std::to_string(n)},
                   {"max_k", std::to_string(k_max)},
                   {"eigenforms verified", std::to_string(forms)},
                   {"all_verified", all ? "true" : "false"}};
    rep.header = {"family", "k", "p", "dimension", "eigenvalue", "verified", "message"};
    for (const auto& o : outcomes)
        rep.rows.push_back({o.family, std::to_string(o.k), std::to_string(o.p),
                            std::to_string(o.dimension), o.eigenvalue,
                            o.verified ? "true" : "false", o.message});
    return rep;
}

// ---- eigenform ----

inline Report cmd_eigenform(int n, int k, int p, const std::string& family) {
    Report rep;
    std::vector<VerifiedEigenpair> pairs;
    Rational nu;
    if (family == "coexact") {
        nu = nu_coexact(n, k, p);
        const FormSubspace H = build_Hkp(n, k, p);
        const FormSubspace radial = p == 0 ? H : split_H(H).second;
        for (const PForm& xi : radial.basis) pairs.push_back(build_coexact_pair(n, k, p, xi));
    } else if (family == "exact") {
        nu = nu_exact(n, k, p);
        const FormSubspace H = build_Hkp(n, k, p - 1);
        const FormSubspace gen = p - 1 == 0 ? H : split_H(H).second;
        for (const PForm& phi : gen.basis) pairs.push_back(build_exact_pair(n, k, p, phi));
    } else {
        throw std::invalid_argument("family must be 'coexact' or 'exact'");
    }

    rep.json["subcommand"] = "eigenform";
    rep.json["n"] = n;
    rep.json["k"] = k;
    rep.json["p"] = p;
    rep.json["family"] = family;
    rep.json["eigenvalue"] = to_string(nu);
    rep.json["count"] = pairs.size();
    Json arr = Json::array();
    for (size_t i = 0; i < pairs.size(); ++i) {
        Json row;
        row["index"] = i;
        row["boundary_form"] = to_string(pairs[i].boundary_eigenform);
        row["harmonic_extension"] = to_string(pairs[i].harmonic_extension);
        row["trace_scale"] = to_string(pairs[i].trace_scale);
        arr.push_back(std::move(row));
    }
    rep.json["forms"] = std::move(arr);

    rep.summary = {{"subcommand", "eigenform"},
                   {"n", std::to_string(n)},
                   {"k", std::to_string(k)},
                   {"p", std::to_string(p)},
                   {"family", family},
                   {"eigenvalue", to_string(nu)},
                   {"basis size", std::to_string(pairs.size())}};
    rep.header = {"index", "boundary_form", "harmonic_extension", "trace_scale"};
    for (size_t i = 0; i < pairs.size(); ++i)
        rep.rows.push_back({std::to_string(i), to_string(pairs[i].boundary_eigenform),
                            to_string(pairs[i].harmonic_extension),
                            to_string(pairs[i].trace_scale)});
    return rep;
}

// ---- radial ----

inline Report cmd_radial(const std::string& profile_name, int n, int p, int k,
                         const std::vector<double>& radii) {
    WarpProfile profile;
    if (profile_name == "euclidean") profile = euclidean_profile();
    else if (profile_name == "spherical") profile = spherical_profile();
    else if (profile_name == "hyperbolic") profile = hyperbolic_profile();
    else throw std::invalid_argument("profile must be euclidean, spherical, or hyperbolic");
    if (p == n && k != 1)
        throw std::invalid_argument("the volume family has only the index k = 1");

    const Rational mu = p == n ? Rational(0) : sphere_hodge_coexact(n, k, p);

    Report rep;
    rep.json["subcommand"] = "radial";
    rep.json["profile"] = profile_name;
    rep.json["n"] = n;
    rep.json["p"] = p;
    rep.json["k"] = k;
    rep.json["mu"] = to_string(mu);
    rep.json["float_tolerance"] = 1e-8;
    Json arr = Json::array();
    rep.header = {"profile", "n", "p", "k", "mu", "R", "nu", "closed_form"};
    for (const double R : radii) {
        const RadialSolution sol = solve_radial_profile({profile, n, p, k, mu, R});
        std::string closed;
        if (profile_name == "euclidean" && p < n) {
            std::ostringstream os;
            os << std::setprecision(17) << (k + p) / R;
            closed = os.str();
        }
        Json row;
        row["R"] = R;
        row["nu"] = sol.nu;
        row["indicial_exponent"] = sol.indicial_exponent;
        if (!closed.empty()) row["closed_form"] = closed;
        arr.push_back(std::move(row));
        rep.rows.push_back({profile_name, std::to_string(n), std::to_string(p), std::to_string(k),
                            to_string(mu), detail::fmt_double(R), detail::fmt_double(sol.nu),
                            closed});
    }
    rep.json["results"] = std::move(arr);
    rep.summary = {{"subcommand", "radial"},
                   {"profile", profile_name},
                   {"n", std::to_string(n)},
                   {"p", std::to_string(p)},
                   {"k", std::to_string(k)},
                   {"mu", to_string(mu)},
                   {"float tolerance", "1e-8"}};
    return rep;
}

// ---- galerkin ----

inline Report cmd_galerkin(const std::vector<std::string>& axes_raw, int n, int p, int max_degree,
                           const std::string& constraint_name,
                           const std::optional<std::string>& certify) {
    BoundaryConstraint constraint;
    if (constraint_name == "tangential") constraint = BoundaryConstraint::tangential;
    else if (constraint_name == "none") constraint = BoundaryConstraint::none;
    else throw std::invalid_argument("constraint must be 'tangential' or 'none'");

    const std::vector<Rational> axes = detail::parse_axes(axes_raw);
    const Domain dom = axes.empty() ? Domain::unit_ball() : Domain::ellipsoid(axes);
    const GalerkinProblem gp{dom, n, p, max_degree, constraint};
    const AssembledProblem ap = assemble_problem(gp);
    const EigResult res = smallest_rayleigh(ap);

    // isoperimetric right-hand side (p+1)/(n+1) * area/volume; on the unit
    // ball the ratio of volumes is n+1 and the bound collapses to p+1
    double iso_rhs;
    std::string iso_rhs_exact;
    if (axes.empty()) {
        iso_rhs = static_cast<double>(p + 1);
        iso_rhs_exact = to_string(Rational(p + 1));
    } else {
        const int dim = n + 1;
        const double area = steklov::detail::ellipsoid_surface_area(axes, n);
        double volume = ball_integral(Poly::constant(dim, Rational(1))).to_double();
        for (const auto& a : axes) volume *= a.get_d();
        iso_rhs = (p + 1.0) / (n + 1.0) * area / volume;
    }
    const bool iso_ok = res.value <= iso_rhs + 1e-9;

    Report rep;
    rep.json["subcommand"] = "galerkin";
    rep.json["domain"] = detail::domain_name(axes_raw);
    if (!axes_raw.empty()) rep.json["axes"] = axes_raw;
    rep.json["n"] = n;
    rep.json["p"] = p;
    rep.json["D"] = max_degree;
    rep.json["constraint"] = constraint_name;
    rep.json["galerkin_value"] = res.value;
    if (axes.empty()) rep.json["closed_form"] = to_string(first_eigenvalue(n, p));
    rep.json["iso_rhs"] = iso_rhs;
    if (!iso_rhs_exact.empty()) rep.json["iso_rhs_exact"] = iso_rhs_exact;
    rep.json["verdict"] = iso_ok ? "confirmed" : "violated";
    rep.json["trial_dimension"] = res.trial_dimension;
    rep.json["residual"] = res.residual;
    rep.json["value_kind"] =
        res.certificate == ValueCertificate::exact_rational_ratio ? "exact_pencil" : "floating";
    rep.json["float_tolerance"] = 1e-9;
    rep.exit_code = iso_ok ? 0 : 1;

    std::string certified_str;
    if (certify) {
        const Rational candidate = parse_rational(*certify);
        const CertificateResult cr = certify_smallest_eigenvalue(ap, candidate);
        Json c;
        c["candidate"] = to_string(candidate);
        c["certified"] = cr.certified;
        c["reason"] = cr.reason;
        c["sectors_checked"] = cr.sectors_checked;
        c["max_pencil_dimension"] = cr.max_pencil_dimension;
        rep.json["certificate"] = std::move(c);
        certified_str = cr.certified ? "true" : "false";
        if (!cr.certified) rep.exit_code = 1;
    }

    rep.summary = {{"subcommand", "galerkin"},
                   {"domain", detail::domain_name(axes_raw)},
                   {"n", std::to_string(n)},
                   {"p", std::to_string(p)},
                   {"D", std::to_string(max_degree)},
                   {"trial dimension", std::to_string(res.trial_dimension)},
                   {"galerkin_value", detail::fmt_double(res.value)},
                   {"iso_rhs", detail::fmt_double(iso_rhs)},
                   {"verdict", iso_ok ? "confirmed" : "violated"}};
    if (axes.empty()) rep.summary.insert(rep.summary.begin() + 6,
                                         {"closed_form", to_string(first_eigenvalue(n, p))});
    if (!certified_str.empty()) rep.summary.push_back({"certified", certified_str});
    rep.header = {"domain", "n", "p", "D", "galerkin_value", "closed_form", "iso_rhs", "verdict",
                  "certified"};
    rep.rows.push_back({detail::domain_name(axes_raw), std::to_string(n), std::to_string(p),
                        std::to_string(max_degree), detail::fmt_double(res.value),
                        axes.empty() ? to_string(first_eigenvalue(n, p)) : std::string(),
                        detail::fmt_double(iso_rhs), iso_ok ? "confirmed" : "violated",
                        certified_str});
    return rep;
}

// ---- iso-check ----

inline Report cmd_iso_check(const std::vector<std::string>& axes_raw, int n, int p,
                            int max_degree) {
    const std::vector<Rational> axes = detail::parse_axes(axes_raw);
    const Domain dom = axes.empty() ? Domain::unit_ball() : Domain::ellipsoid(axes);
    const IsoBoundReport r = iso_bound_check(dom, n, p, max_degree);

    Report rep;
    rep.exit_code = r.confirmed ? 0 : 1;
    rep.json["subcommand"] = "iso-check";
    rep.json["domain"] = detail::domain_name(axes_raw);
    if (!axes_raw.empty()) rep.json["axes"] = axes_raw;
    rep.json["n"] = n;
    rep.json["p"] = p;
    rep.json["D"] = max_degree;
    rep.json["lhs"] = r.lhs;
    rep.json["rhs"] = r.rhs;
    if (r.exact) {
        rep.json["lhs_exact"] = to_string(r.lhs_exact);
        rep.json["rhs_exact"] = to_string(r.rhs_exact);
        rep.json["margin_exact"] = to_string(r.margin_exact);
    }
    rep.json["equality"] = r.equality;
    rep.json["verdict"] = r.confirmed ? "confirmed" : "violated";
    rep.json["float_tolerance"] = 1e-9;

    rep.summary = {{"subcommand", "iso-check"},
                   {"domain", detail::domain_name(axes_raw)},
                   {"n", std::to_string(n)},
                   {"p", std::to_string(p)},
                   {"D", std::to_string(max_degree)},
                   {"lhs", detail::fmt_double(r.lhs)},
                   {"rhs", detail::fmt_double(r.rhs)},
                   {"verdict", r.confirmed ? "confirmed" : "violated"}};
    rep.header = {"domain", "n", "p", "D", "lhs", "rhs", "margin_exact", "equality", "verdict"};
    rep.rows.push_back({detail::domain_name(axes_raw), std::to_string(n), std::to_string(p),
                        std::to_string(max_degree), detail::fmt_double(r.lhs),
                        detail::fmt_double(r.rhs),
                        r.exact ? to_string(r.margin_exact) : std::string(),
                        r.equality ? "true" : "false", r.confirmed ? "confirmed" : "violated"});
    return rep;
}

// ---- vf3 ----

inline Report cmd_vf3(const std::string& field_name, const std::vector<std::string>& components,
                      const std::string& boundary_name) {
    std::array<std::string, 3> comp;
    std::string boundary = boundary_name;
    if (!field_name.empty()) {
        if (field_name == "minimizer") {
            comp = {"2 + -2 * x1^2 + 1 * x2^2 + 1 * x3^2", "-3 * x1 x2", "-3 * x1 x3"};
            boundary = "tangent";
        } else if (field_name == "radial") {
            comp = {"1 * x1", "1 * x2", "1 * x3"};
            boundary = "normal";
        } else if (field_name == "rotation") {
            comp = {"1 * x2", "-1 * x1", "0"};
            boundary = "tangent";
        } else {
            throw std::invalid_argument("field must be minimizer, radial, or rotation");
        }
    } else {
        if (components.size() != 3)
            throw std::invalid_argument("a custom field needs exactly three components");
        if (boundary.empty())
            throw std::invalid_argument("a custom field needs --boundary tangent|normal");
        for (int i = 0; i < 3; ++i) comp[static_cast<size_t>(i)] = components[static_cast<size_t>(i)];
    }
    VectorFieldBoundary type;
    if (boundary == "tangent") type = VectorFieldBoundary::tangent;
    else if (boundary == "normal") type = VectorFieldBoundary::normal;
    else throw std::invalid_argument("boundary must be 'tangent' or 'normal'");

    const std::array<Poly, 3> field = {parse_poly(comp[0], 3), parse_poly(comp[1], 3),
                                       parse_poly(comp[2], 3)};
    const Rational q = vector_field_rayleigh_3d(field, type);

    Report rep;
    rep.json["subcommand"] = "vf3";
    rep.json["field"] = field_name.empty() ? "custom" : field_name;
    rep.json["boundary"] = boundary;
    rep.json["components"] = comp;
    rep.json["rayleigh_exact"] = to_string(q);
    rep.json["rayleigh"] = q.get_d();
    rep.json["value_kind"] = "exact_rational_ratio";

    rep.summary = {{"subcommand", "vf3"},
                   {"field", field_name.empty() ? "custom" : field_name},
                   {"boundary", boundary},
                   {"rayleigh_exact", to_string(q)},
                   {"rayleigh", detail::fmt_double(q.get_d())}};
    rep.header = {"field", "boundary", "X1", "X2", "X3", "rayleigh_exact"};
    rep.rows.push_back({field_name.empty() ? "custom" : field_name, boundary, comp[0], comp[1],
                        comp[2], to_string(q)});
    return rep;
}

// ---- moments ----

inline Report cmd_moments(const std::vector<int>& exponents, const std::string& domain) {
    if (exponents.empty()) throw std::invalid_argument("at least one exponent is required");
    for (const int e : exponents)
        if (e < 0) throw std::invalid_argument("exponents must be non-negative");
    if (domain != "sphere" && domain != "ball")
        throw std::invalid_argument("domain must be 'sphere' or 'ball'");
    const MultiIndex a(exponents.begin(), exponents.end());
    const MomentValue m = domain == "ball" ? ball_monomial_moment(a) : sphere_monomial_moment(a);

    Report rep;
    rep.json["subcommand"] = "moments";
    rep.json["domain"] = domain;
    rep.json["dimension"] = exponents.size();
    rep.json["exponents"] = exponents;
    rep.json["rational"] = to_string(m.rational);
    rep.json["pi_half_power"] = m.pi_half_power;
    rep.json["value"] = m.to_double();
    rep.json["float_tolerance"] = 1e-15;

    std::string expo;
    for (size_t i = 0; i < exponents.size(); ++i)
        expo += (i ? " " : "") + std::to_string(exponents[i]);
    rep.summary = {{"subcommand", "moments"},
                   {"domain", domain},
                   {"exponents", expo},
                   {"rational", to_string(m.rational)},
                   {"pi_half_power", std::to_string(m.pi_half_power)},
                   {"value", detail::fmt_double(m.to_double())}};
    rep.header = {"domain", "exponents", "rational", "pi_half_power", "value"};
    rep.rows.push_back({domain, expo, to_string(m.rational), std::to_string(m.pi_half_power),
                        detail::fmt_double(m.to_double())});
    return rep;
}

// ---- dims ----

inline Report cmd_dims(int n, int k_max) {
    const std::vector<SubspaceDims> table = subspace_dimension_table(n, k_max);
    Report rep;
    rep.json["subcommand"] = "dims";
    rep.json["n"] = n;
    rep.json["max_k"] = k_max;
    Json arr = Json::array();
    for (const auto& row : table) {
        Json r;
        r["k"] = row.k;
        r["p"] = row.p;
        r["polynomial"] = row.dim_polynomial;
        r["harmonic"] = row.dim_harmonic;
        r["closed"] = row.dim_closed;
        r["radial_kernel"] = row.dim_radial_kernel;
        arr.push_back(std::move(r));
    }
    rep.json["rows"] = std::move(arr);

    rep.summary = {{"subcommand", "dims"},
                   {"n", std::to_string(n)},
                   {"max_k", std::to_string(k_max)}};
    rep.header = {"k", "p", "polynomial", "harmonic", "closed", "radial_kernel"};
    for (const auto& row : table)
        rep.rows.push_back({std::to_string(row.k), std::to_string(row.p),
                            std::to_string(row.dim_polynomial), std::to_string(row.dim_harmonic),
                            std::to_string(row.dim_closed),
                            std::to_string(row.dim_radial_kernel)});
    return rep;
}

// ---- driver ----

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectral toolkit for the Dirichlet-to-Neumann operator on differential forms"};
    app.name("steklov");
    app.require_subcommand(1);

    bool as_json = false, as_csv = false;
    app.add_flag("--json", as_json, "emit a JSON report");
    app.add_flag("--csv", as_csv, "emit CSV rows");
    unsigned long long seed = 0;
    CLI::Option* seed_opt =
        app.add_option("--seed", seed, "recorded in the report for reproducibility");

    auto* sp = app.add_subcommand("spectrum", "distinct eigenvalues on p-forms of the unit ball");
    int sp_n = 2, sp_p = 0, sp_kmax = 3;
    bool sp_nomult = false;
    sp->add_option("--n", sp_n, "boundary sphere dimension")->required();
    sp->add_option("--p", sp_p, "form degree")->required();
    sp->add_option("--max-k", sp_kmax, "largest family index");
    sp->add_flag("--no-multiplicities", sp_nomult, "skip multiplicity counting");

    auto* vb = app.add_subcommand("verify-ball",
                                  "re-verify every eigenform basis in exact arithmetic");
    int vb_n = 2, vb_kmax = 3;
    vb->add_option("--n", vb_n, "boundary sphere dimension")->required();
    vb->add_option("--max-k", vb_kmax, "largest family index");

    auto* ef = app.add_subcommand("eigenform", "print one family's eigenform basis");
    int ef_n = 2, ef_k = 1, ef_p = 1;
    std::string ef_family;
    ef->add_option("--n", ef_n, "boundary sphere dimension")->required();
    ef->add_option("--k", ef_k, "family index")->required();
    ef->add_option("--p", ef_p, "form degree")->required();
    ef->add_option("--family", ef_family, "coexact or exact")->required();

    auto* ra = app.add_subcommand("radial", "eigenvalues of warped geodesic balls");
    std::string ra_profile;
    int ra_n = 2, ra_p = 0, ra_k = 1;
    std::vector<double> ra_R;
    ra->add_option("--profile", ra_profile, "euclidean, spherical, or hyperbolic")->required();
    ra->add_option("--n", ra_n, "boundary sphere dimension")->required();
    ra->add_option("--p", ra_p, "form degree")->required();
    ra->add_option("--k", ra_k, "family index");
    ra->add_option("--R", ra_R, "geodesic radius (repeatable)");

    auto* ga = app.add_subcommand("galerkin", "Rayleigh-Ritz upper bound for the first eigenvalue");
    int ga_n = 2, ga_p = 1, ga_D = 3;
    std::vector<std::string> ga_axes;
    std::string ga_constraint = "tangential";
    std::string ga_certify;
    ga->add_option("--n", ga_n, "boundary sphere dimension")->required();
    ga->add_option("--p", ga_p, "trial form degree")->required();
    ga->add_option("--D", ga_D, "coefficient degree bound");
    ga->add_option("--axes", ga_axes, "ellipsoid semi-axes as rationals (default: unit ball)");
    ga->add_option("--constraint", ga_constraint, "tangential or none");
    CLI::Option* ga_cert_opt =
        ga->add_option("--certify", ga_certify, "certify this rational as the smallest eigenvalue");

    auto* ic = app.add_subcommand("iso-check", "first eigenvalue against the volume-ratio bound");
    int ic_n = 2, ic_p = 1, ic_D = 3;
    std::vector<std::string> ic_axes;
    ic->add_option("--n", ic_n, "boundary sphere dimension")->required();
    ic->add_option("--p", ic_p, "form degree")->required();
    ic->add_option("--D", ic_D, "coefficient degree bound");
    ic->add_option("--axes", ic_axes, "ellipsoid semi-axes as rationals (default: unit ball)");

    auto* vf = app.add_subcommand("vf3", "exact Rayleigh quotient of a vector field on the 3-ball");
    std::string vf_field, vf_boundary;
    std::vector<std::string> vf_components;
    vf->add_option("--field", vf_field, "built-in field: minimizer, radial, or rotation");
    vf->add_option("--components", vf_components,
                   "three polynomial components of a custom field");
    vf->add_option("--boundary", vf_boundary, "tangent or normal (custom fields)");

    auto* mo = app.add_subcommand("moments", "monomial integral over the unit sphere or ball");
    std::vector<int> mo_exponents;
    std::string mo_domain = "sphere";
    mo->add_option("--exponents", mo_exponents, "monomial exponents, one per variable")
        ->required()
        ->delimiter(',');
    mo->add_option("--domain", mo_domain, "sphere or ball");

    auto* dm = app.add_subcommand("dims", "dimension table of the harmonic form subspaces");
    int dm_n = 2, dm_kmax = 3;
    dm->add_option("--n", dm_n, "boundary sphere dimension")->required();
    dm->add_option("--max-k", dm_kmax, "largest coefficient degree");

    // lets --json/--csv/--seed appear after the subcommand name
    for (CLI::App* sub : {sp, vb, ef, ra, ga, ic, vf, mo, dm}) sub->fallthrough();

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.push_back("steklov");
    for (const auto& a : args) argv_store.push_back(a);
    std::vector<const char*> argv;
    argv.reserve(argv_store.size());
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    if (as_json && as_csv) {
        err << "usage error: --json and --csv are mutually exclusive\n";
        return 2;
    }
    const OutputFormat fmt =
        as_json ? OutputFormat::json : (as_csv ? OutputFormat::csv : OutputFormat::pretty);

    Report rep;
    try {
        if (sp->parsed()) rep = cmd_spectrum(sp_n, sp_p, sp_kmax, !sp_nomult);
        else if (vb->parsed()) rep = cmd_verify_ball(vb_n, vb_kmax);
        else if (ef->parsed()) rep = cmd_eigenform(ef_n, ef_k, ef_p, ef_family);
        else if (ra->parsed())
            rep = cmd_radial(ra_profile, ra_n, ra_p, ra_k,
                             ra_R.empty() ? std::vector<double>{1.0} : ra_R);
        else if (ga->parsed())
            rep = cmd_galerkin(ga_axes, ga_n, ga_p, ga_D, ga_constraint,
                               ga_cert_opt->count() > 0 ? std::optional<std::string>(ga_certify)
                                                        : std::nullopt);
        else if (ic->parsed()) rep = cmd_iso_check(ic_axes, ic_n, ic_p, ic_D);
        else if (vf->parsed()) rep = cmd_vf3(vf_field, vf_components, vf_boundary);
        else if (mo->parsed()) rep = cmd_moments(mo_exponents, mo_domain);
        else if (dm->parsed()) rep = cmd_dims(dm_n, dm_kmax);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (seed_opt->count() > 0) {
        rep.json["seed"] = seed;
        rep.summary.push_back({"seed", std::to_string(seed)});
    }
    detail::emit(rep, fmt, out);
    return rep.exit_code;
}

}  // namespace cli
}  // namespace steklov
