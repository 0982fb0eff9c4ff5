#include "ehq/job.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "ehq/criteria.hpp"
#include "ehq/errors.hpp"
#include "ehq/numerics.hpp"
#include "ehq/theta.hpp"

namespace ehq {

using nlohmann::json;
using nlohmann::ordered_json;

std::string tool_version() { return "ehq 0.1.0"; }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("JSON parse error in " + path + ": " + e.what());
    }
}

namespace {

std::string fnv1a_digest(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Complex parse_complex(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(field + ": expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Monomial parse_monomial(const json& j, const std::string& field) {
    if (!j.is_object()) throw ConfigError(field + ": expected {generator: \"num/den\", ...}");
    Monomial m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_string())
            throw ConfigError(field + "." + it.key() + ": exponents are \"num/den\" strings");
        Rational e = rat_parse(it.value().get<std::string>());
        if (it.key() == "torsion")
            m *= Monomial::root_of_unity(e);
        else
            m *= Monomial::gen(it.key(), e);
    }
    return m;
}

IMat parse_rows(const json& j, std::size_t width, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field + ": expected an array of integer rows");
    IMat rows;
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != width)
            throw ConfigError(field + ": each row needs " + std::to_string(width) + " entries");
        IVec row;
        for (const auto& e : r) {
            if (!e.is_number_integer()) throw ConfigError(field + ": entries must be integers");
            row.push_back(Int(e.get<long long>()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ThetaQuotient parse_theta_quotient(const json& j) {
    int level = j.value("level", 1);
    ThetaQuotient f(level);
    if (j.contains("constant"))
        f *= ThetaQuotient::constant(level, parse_monomial(j["constant"], "b.constant"));
    if (!j.contains("factors") || !j["factors"].is_array())
        throw ConfigError("b override: missing \"factors\" array");
    for (const auto& fac : j["factors"]) {
        Monomial shift = parse_monomial(fac.value("shift", json::object()), "b.factors.shift");
        f *= ThetaQuotient::theta(level, shift, fac.value("arg_power", 1),
                                  fac.value("exponent", 1));
    }
    return f;
}

ordered_json reason_json(const Reason& r) {
    ordered_json o;
    o["kind"] = reason_name(r.kind);
    if (!r.detail.empty()) o["detail"] = r.detail;
    if (r.candidate) o["candidate"] = r.candidate->str();
    if (r.collision) {
        o["collision"] = {{"omega", r.collision->omega.str()},
                          {"omega_prime", r.collision->omega_prime.str()},
                          {"ell", r.collision->ell.str()}};
    }
    return o;
}

NumericParams parse_numeric(const json& config) {
    if (!config.contains("numeric"))
        throw ConfigError("missing \"numeric\" section (p, q, eps required)");
    const json& n = config["numeric"];
    NumericParams par;
    par.p = parse_complex(n.value("p", json()), "numeric.p");
    par.q = parse_complex(n.value("q", json()), "numeric.q");
    if (!n.contains("eps") || !n["eps"].is_array() || n["eps"].size() != 8)
        throw ConfigError("numeric.eps: expected 8 [re, im] pairs");
    for (int j = 0; j < 8; ++j)
        par.eps[j] = parse_complex(n["eps"][j], "numeric.eps[" + std::to_string(j) + "]");
    par.trunc = n.value("trunc", 60);
    par.nodes = n.value("nodes", 1024);
    if (par.trunc < 8 || par.nodes < 8)
        throw ConfigError("numeric.trunc and numeric.nodes must be >= 8");
    if (std::abs(par.p) >= 1.0 || std::abs(par.q) >= 1.0)
        throw ConfigError("numeric.p and numeric.q must satisfy |p|, |q| < 1");
    return par;
}

struct SampleGen {
    std::mt19937 rng;
    explicit SampleGen(unsigned seed) : rng(seed) {}
    Complex annulus(double rlo, double rhi) {
        std::uniform_real_distribution<double> rad(rlo, rhi), ang(0, 2 * std::numbers::pi);
        double r = rad(rng), a = ang(rng);
        return {r * std::cos(a), r * std::sin(a)};
    }
};

}  // namespace

Report run_check(const json& config) {
    Report rep;
    ordered_json& doc = rep.doc;
    doc["tool_version"] = tool_version();
    doc["mode"] = "check";
    doc["inputs_digest"] = fnv1a_digest(config.dump());
    try {
        const std::string case_name = config.value("case", "");
        if (case_name != "A" && case_name != "B" && case_name != "custom")
            throw ConfigError("case: expected \"A\", \"B\" or \"custom\"");
        doc["case"] = case_name;

        std::vector<std::string> gens = param_gens();
        if (config.contains("gens")) gens = config["gens"].get<std::vector<std::string>>();

        BalancingCase c = case_name == "B" ? BalancingCase::B : BalancingCase::A;
        RelationLattice lattice;
        if (case_name == "custom") {
            if (!config.contains("lattice"))
                throw ConfigError("case custom requires an explicit \"lattice\"");
            lattice = RelationLattice::from_rows(
                gens, parse_rows(config["lattice"], gens.size(), "lattice"));
        } else {
            lattice = case_lattice(c);
            if (config.contains("extra_relations")) {
                IMat rows = lattice.basis();
                for (auto& r :
                     parse_rows(config["extra_relations"], gens.size(), "extra_relations"))
                    rows.push_back(std::move(r));
                lattice = RelationLattice::from_rows(gens, std::move(rows));
            }
        }

        std::vector<Monomial> eps = param_epsilons();
        if (config.contains("epsilons")) {
            if (!config["epsilons"].is_array() || config["epsilons"].size() != 8)
                throw ConfigError("epsilons: expected 8 monomials");
            eps.clear();
            for (const auto& e : config["epsilons"]) eps.push_back(parse_monomial(e, "epsilons"));
        }

        std::optional<ThetaQuotient> b_override;
        if (config.contains("b")) b_override = parse_theta_quotient(config["b"]);

        Verdict v = transcendence_verdict(eps, c, lattice, b_override);
        HypergeometricData data = build_hypergeometric(eps, lattice);
        auto shared = std::make_shared<const RelationLattice>(lattice);

        doc["outcome"] = v.outcome == Outcome::Transcendental ? "transcendental" : "inconclusive";
        doc["nu_nonzero"] = constant_solution_eliminated(data.nu_factors, lattice);
        doc["reasons"] = ordered_json::array();
        for (const auto& r : v.reasons) doc["reasons"].push_back(reason_json(r));
        doc["divisors"] = {{"p2", data.p2.divisor(shared).str()},
                           {"sigma_inv_p3", data.p3.sigma(-1).divisor(shared).str()},
                           {"b", (b_override ? *b_override : data.b).divisor(shared).str()}};
        rep.exit_code = v.outcome == Outcome::Transcendental ? 0 : 2;
    } catch (const ConfigError& e) {
        doc["error"] = e.what();
        rep.exit_code = 4;
    } catch (const Error& e) {
        doc["error"] = e.what();
        rep.exit_code = 4;
    }
    return rep;
}

Report run_validate(const json& config, const ValidateOverrides& ov) {
    Report rep;
    ordered_json& doc = rep.doc;
    doc["tool_version"] = tool_version();
    doc["mode"] = "validate";
    doc["inputs_digest"] = fnv1a_digest(config.dump());
    try {
        NumericParams par = parse_numeric(config);
        const json& n = config["numeric"];
        if (ov.trunc) par.trunc = *ov.trunc;
        if (ov.nodes) par.nodes = *ov.nodes;
        unsigned seed = ov.seed ? *ov.seed : n.value("seed", 42u);
        int samples = n.value("samples", 4);
        if (n.value("enforce_balancing", true)) par = par.balanced();

        json tols = config.value("tolerances", json::object());
        const double tol_theta = tols.value("theta", 1e-10);
        const double tol_gamma = tols.value("gamma", 1e-8);
        const double tol_ell = tols.value("ellipticity", 1e-8);
        const double tol_quad = tols.value("quadrature", 1e-6);
        const double tol_hyp = tols.value("hypergeo", 1e-4);
        const double tol_id = tols.value("identity", 1e-10);

        doc["seed"] = seed;
        doc["balancing_residual"] = par.balancing_residual();
        doc["residuals"] = ordered_json::array();
        bool all_pass = true;

        auto push = [&](const std::string& name, double resid, double tol) {
            bool pass = resid < tol;
            all_pass = all_pass && pass;
            doc["residuals"].push_back(
                {{"check", name}, {"residual", resid}, {"tolerance", tol}, {"pass", pass}});
        };
        auto push_error = [&](const std::string& name, const char* what) {
            doc["residuals"].push_back({{"check", name}, {"status", "skipped"}, {"error", what}});
        };

        SampleGen gen(seed);

        {  // theta functional equation: theta(pz) = -theta(z)/z
            double worst = 0;
            for (int i = 0; i < 100; ++i) {
                Complex z = gen.annulus(0.5, 2.0);
                Complex lhs = theta_eval(par.p * z, par.p, par.trunc);
                Complex rhs = -theta_eval(z, par.p, par.trunc) / z;
                worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
            }
            push("theta_functional_equation", worst, tol_theta);
        }
        {  // elliptic gamma shifts and reflection
            double wq = 0, wp = 0, wr = 0;
            for (int i = 0; i < 50; ++i) {
                Complex z = gen.annulus(0.5, 2.0);
                Complex g = elliptic_gamma_eval(z, par.p, par.q, par.trunc);
                Complex gq = elliptic_gamma_eval(par.q * z, par.p, par.q, par.trunc);
                Complex gp = elliptic_gamma_eval(par.p * z, par.p, par.q, par.trunc);
                wq = std::max(wq, std::abs(gq - theta_eval(z, par.p, par.trunc) * g) / std::abs(gq));
                wp = std::max(wp, std::abs(gp - theta_eval(z, par.q, par.trunc) * g) / std::abs(gp));
                Complex refl =
                    g * elliptic_gamma_eval(par.p * par.q / z, par.p, par.q, par.trunc);
                wr = std::max(wr, std::abs(refl - 1.0));
            }
            push("gamma_shift_q", wq, tol_gamma);
            push("gamma_shift_p", wp, tol_gamma);
            push("gamma_reflection", wr, tol_gamma);
        }
        {  // p-ellipticity of A under the balancing
            double worst = 0;
            for (int i = 0; i < 20; ++i) {
                Complex z = gen.annulus(0.6, 1.6);
                Complex a0 = A_eval(z, par), a1 = A_eval(par.p * z, par);
                worst = std::max(worst, std::abs(a1 - a0) / std::abs(a0));
            }
            push("a_ellipticity", worst, tol_ell);
        }
        {  // a A(qz) + A(qz) + A(1/(qz)) = nu
            Complex nu = nu_eval(par);
            double worst = 0;
            for (int i = 0; i < 20; ++i) {
                Complex z = gen.annulus(0.8, 1.25);
                Complex t1 = a_eval(z, par) * A_eval(par.q * z, par);
                Complex t2 = A_eval(par.q * z, par);
                Complex t3 = A_eval(1.0 / (par.q * z), par);
                double den = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(nu);
                worst = std::max(worst, std::abs(t1 + t2 + t3 - nu) / den);
            }
            push("ab_coefficient_identity", worst, tol_id);
        }
        // V quadrature convergence and t-permutation symmetry, on the t's
        // induced by the epsilons at z = 1
        try {
            const Complex c = std::sqrt(par.eps[5] * par.eps[7]) / (par.p * par.p);
            std::array<Complex, 8> t;
            for (int j = 0; j < 5; ++j) t[j] = par.q / (c * par.eps[j]);
            t[5] = c;
            t[6] = c;
            t[7] = c / par.eps[7];
            for (auto& tj : t)
                if (std::abs(tj) >= 1.0) throw WindowError("|t_j| >= 1");
            auto v = v_integral_eval(t, par.p, par.q, par.nodes, par.trunc);
            push("v_node_doubling", v.error_estimate / std::abs(v.value), tol_quad);
            std::swap(t[0], t[3]);
            auto vperm = v_integral_eval(t, par.p, par.q, par.nodes, par.trunc);
            push("v_permutation_symmetry", std::abs(vperm.value - v.value) / std::abs(v.value),
                 tol_quad);
        } catch (const WindowError& e) {
            push_error("v_node_doubling", e.what());
        } catch (const PoleError& e) {
            push_error("v_node_doubling", e.what());
        }
        try {  // the hypergeometric equation residual of f itself
            std::vector<Complex> zs;
            for (int i = 0; i < samples; ++i) zs.push_back(gen.annulus(0.95, 1.05));
            auto y = [&](Complex z) { return f_eval(par, z).value; };
            push("hypergeo_equation", hypergeo_residual(y, par, zs), tol_hyp);
        } catch (const WindowError& e) {
            push_error("hypergeo_equation", e.what());
        } catch (const PoleError& e) {
            push_error("hypergeo_equation", e.what());
        }

        doc["outcome"] = all_pass ? "pass" : "fail";
        rep.exit_code = all_pass ? 0 : 3;
    } catch (const ConfigError& e) {
        doc["error"] = e.what();
        rep.exit_code = 4;
    }
    return rep;
}

Report run_eval(const json& config, const json& points) {
    Report rep;
    ordered_json& doc = rep.doc;
    doc["tool_version"] = tool_version();
    doc["mode"] = "eval";
    doc["inputs_digest"] = fnv1a_digest(config.dump() + points.dump());
    try {
        NumericParams par = parse_numeric(config);
        if (!points.is_array()) throw ConfigError("points: expected an array of [re, im] pairs");

        doc["nu"] = complex_json(nu_eval(par));
        doc["values"] = ordered_json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            Complex z = parse_complex(points[i], "points[" + std::to_string(i) + "]");
            ordered_json row;
            row["z"] = complex_json(z);
            row["theta"] = complex_json(theta_eval(z, par.p, par.trunc));
            auto guarded = [&](const char* name, auto&& fn) {
                try {
                    fn();
                } catch (const Error& e) {
                    row[name] = ordered_json{{"error", e.what()}};
                }
            };
            guarded("gamma", [&] {
                row["gamma"] = complex_json(elliptic_gamma_eval(z, par.p, par.q, par.trunc));
            });
            guarded("A", [&] { row["A"] = complex_json(A_eval(z, par)); });
            guarded("f", [&] {
                auto f = f_eval(par, z);
                row["f"] = ordered_json{{"value", complex_json(f.value)},
                                        {"error_estimate", f.error_estimate}};
            });
            doc["values"].push_back(std::move(row));
        }
        rep.exit_code = 0;
    } catch (const ConfigError& e) {
        doc["error"] = e.what();
        rep.exit_code = 4;
    }
    return rep;
}

}  // namespace ehq
