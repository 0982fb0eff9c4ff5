#include "ehq/criteria.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ehq/errors.hpp"

namespace ehq {

const std::vector<std::string>& param_gens() {
    static const std::vector<std::string> gens = {"p",  "q",  "e1", "e2", "e3",
                                                  "e4", "e5", "e6", "e7", "e8"};
    return gens;
}

std::vector<Monomial> param_epsilons() {
    std::vector<Monomial> eps;
    for (int j = 1; j <= 8; ++j) eps.push_back(Monomial::gen("e" + std::to_string(j)));
    return eps;
}

RelationLattice case_lattice(BalancingCase c) {
    if (c == BalancingCase::A) {
        // e1*...*e8 = p^2 q^2
        return RelationLattice::from_rows(param_gens(),
                                          {{-2, -2, 1, 1, 1, 1, 1, 1, 1, 1}});
    }
    // (e1*...*e6) e7^2 = p^2 q  and  e8 = e7 q
    return RelationLattice::from_rows(param_gens(), {{-2, -1, 1, 1, 1, 1, 1, 1, 2, 0},
                                                     {0, 1, 0, 0, 0, 0, 0, 0, 1, -1}});
}

std::string RiccatiCandidate::str() const {
    std::ostringstream os;
    if (is_zero()) {
        os << "constant candidate (deg 0)";
        return os.str();
    }
    os << "deg(r1)=" << deg_r1.str() << " deg(r2)=" << deg_r2.str()
       << " deg(r0)=" << deg_r0.str() << " m=" << m.str() << " r1: {";
    bool first = true;
    for (auto& [pt, n] : r1_counts) {
        if (!first) os << ", ";
        os << pt.str();
        if (n != 1) os << "^" << n.str();
        first = false;
    }
    os << "} r2: {";
    first = true;
    for (auto& [pt, n] : r2_counts) {
        if (!first) os << ", ";
        os << pt.str();
        if (n != 1) os << "^" << n.str();
        first = false;
    }
    os << "}";
    return os.str();
}

namespace {

int cmp_int(const Int& a, const Int& b) { return a < b ? -1 : (b < a ? 1 : 0); }

int cmp_counts(const std::map<Monomial, Int>& a, const std::map<Monomial, Int>& b) {
    auto it = a.begin();
    auto jt = b.begin();
    for (; it != a.end() && jt != b.end(); ++it, ++jt) {
        if (auto c = it->first <=> jt->first; c != 0) return c < 0 ? -1 : 1;
        if (int c = cmp_int(it->second, jt->second)) return c;
    }
    if (it != a.end()) return 1;
    if (jt != b.end()) return -1;
    return 0;
}

}  // namespace

bool candidate_less(const RiccatiCandidate& a, const RiccatiCandidate& b) {
    if (int c = cmp_int(a.deg_r1, b.deg_r1)) return c < 0;
    for (int j = 0; j < 8; ++j)
        if (int c = cmp_int(a.alpha[j], b.alpha[j])) return c < 0;
    for (int j = 0; j < 8; ++j)
        if (int c = cmp_int(a.alpha_prime[j], b.alpha_prime[j])) return c < 0;
    if (int c = cmp_int(a.gamma, b.gamma)) return c < 0;
    if (int c = cmp_counts(a.r1_counts, b.r1_counts)) return c < 0;
    if (int c = cmp_counts(a.r2_counts, b.r2_counts)) return c < 0;
    if (int c = cmp_int(a.deg_r0, b.deg_r0)) return c < 0;
    return cmp_int(a.m, b.m) < 0;
}

namespace {

// ---- condition (iv) -------------------------------------------------------

// omega_level(r1/r2) = q_2^{deg2(r0)} mod p^Z modulo the lattice, with
// deg2(r0) a nonnegative integer.  Returns (deg_r0, p-exponent m).
std::optional<std::pair<Int, Int>> weight_condition(const Monomial& w,
                                                    const RelationLattice& lat) {
    if (!w.is_torsion_free()) return std::nullopt;
    auto sol = lat.tracked_solve(w, {"q", "p"});
    if (!sol) return std::nullopt;
    // q_2 = q^{1/2}: deg(r0) = 2 * (q-exponent).
    AffineSet scaled = *sol;
    scaled.particular[0] *= 2;
    for (auto& d : scaled.dirs) d[0] *= 2;
    auto pt = affine_integer_point_min_nonneg(scaled);
    if (!pt) return std::nullopt;
    return std::make_pair(pt->first, pt->second);
}

// ---- pruning machinery ----------------------------------------------------

// Linear functionals on exponent vectors over a fixed generator list:
//  - `funcs` vanish on span(lattice hull, e_p, e_q); a selection can only
//    satisfy condition (iv) if all of them vanish on its log-weight.
//  - `f_q`, when the decomposition is unique, reads off the q-exponent of the
//    hull-projected weight (deg(r0) = 2 * f_q), enabling the >= 0 bound.
// All of them kill e_p and the torsion is not part of the exponent vector, so
// their values are constant on coarse classes.
struct Functionals {
    std::vector<std::string> gens;
    QMat funcs;                  // one row per functional
    std::optional<QVec> f_q;

    QVec phi(const Monomial& mono) const {
        QVec out(funcs.size() + 1, 0);
        for (auto& [g, e] : mono.exponents()) {
            auto it = std::find(gens.begin(), gens.end(), g);
            if (it == gens.end()) continue;  // cannot happen: gens are completed
            std::size_t gi = static_cast<std::size_t>(it - gens.begin());
            for (std::size_t f = 0; f < funcs.size(); ++f) out[f] += funcs[f][gi] * e;
            if (f_q) out[funcs.size()] += (*f_q)[gi] * e;
        }
        return out;
    }
};

std::vector<Monomial> all_points(const Divisor& a, const Divisor& b) {
    std::vector<Monomial> pts;
    for (auto& [pt, n] : a.terms()) pts.push_back(pt);
    for (auto& [pt, n] : b.terms()) pts.push_back(pt);
    return pts;
}

Functionals build_functionals(const RelationLattice& lat,
                              const std::vector<Monomial>& points) {
    Functionals F;
    F.gens = lat.gens();
    for (auto& pt : points)
        for (auto& g : pt.support())
            if (std::find(F.gens.begin(), F.gens.end(), g) == F.gens.end())
                F.gens.push_back(g);
    const std::size_t n = F.gens.size();
    auto idx = [&](const std::string& g) {
        return static_cast<std::size_t>(
            std::find(F.gens.begin(), F.gens.end(), g) - F.gens.begin());
    };
    const std::size_t ip = idx("p"), iq = idx("q");

    QMat rows;  // span whose annihilator we want
    for (auto& r : lat.basis()) {
        QVec row(n, 0);
        for (std::size_t g = 0; g < lat.gens().size(); ++g) row[g] = Rational(r[g]);
        rows.push_back(std::move(row));
    }
    {
        QVec ep(n, 0), eq(n, 0);
        if (ip < n) ep[ip] = 1;
        if (iq < n) eq[iq] = 1;
        rows.push_back(std::move(ep));
        rows.push_back(std::move(eq));
    }
    for (auto& col : rational_right_kernel(rows)) F.funcs.push_back(col);

    // f_q: f(hull row) = 0, f(e_p) = 0, f(e_q) = 1 — valid as a pruning
    // functional only when the defining rows are independent (unique
    // decomposition); otherwise skip the degree bound.
    QVec rhs(rows.size(), 0);
    rhs.back() = 1;
    const std::size_t rank = n - rational_right_kernel(rows).size();
    if (rank == rows.size()) {
        if (auto f = solve_rational(rows, rhs)) F.f_q = *f;
    }
    return F;
}

// ---- the search core ------------------------------------------------------

// Support grouped by coarse class (torsion and p-part dropped) and side.  The
// pruning data (functional values, q-rate) is constant within a group, so the
// branch-and-bound walks count vectors over groups; only the surviving count
// vectors are expanded into explicit point selections for the exact
// condition-(iv) test.
struct Group {
    std::vector<Monomial> points;  // multiplicity-expanded
    int side;                      // 1 = in div2(p2), 2 = in div2(sigma^-1 p3)
    QVec phi;
    Rational rate;
};

std::vector<Group> build_groups(const Divisor& d2, const Divisor& d3s,
                                const Functionals& F) {
    std::map<std::pair<Monomial, int>, Group> grouped;
    auto collect = [&](const Divisor& d, int side) {
        for (auto& [pt, n] : d.terms()) {
            if (n <= 0)
                throw Error("riccati search expects effective divisors (theta products)");
            auto& g = grouped[{pt.coarse(), side}];
            if (g.points.empty()) {
                g.side = side;
                QVec phi = F.phi(pt);
                if (F.f_q) g.rate = phi[F.funcs.size()];
                phi.resize(F.funcs.size());
                g.phi = std::move(phi);
            }
            for (Int i = 0; i < n; ++i) g.points.push_back(pt);
        }
    };
    collect(d2, 1);
    collect(d3s, 2);
    std::vector<Group> groups;
    for (auto& [k, g] : grouped) groups.push_back(std::move(g));
    return groups;
}

void classify(RiccatiCandidate& cand) {
    auto eps_index = [](const Monomial& coarse, const Rational& e_exp) {
        for (int j = 1; j <= 8; ++j) {
            if (coarse == Monomial::gen("e" + std::to_string(j), e_exp)) return j - 1;
        }
        return -1;
    };
    for (auto& [pt, n] : cand.r1_counts) {
        Monomial c = pt.coarse();
        if (int j = eps_index(c, Rational(1, 2)); j >= 0) cand.alpha[j] += n;
        else if (c == Monomial::gen("q", Rational(-1, 4))) cand.gamma += n;
    }
    for (auto& [pt, n] : cand.r2_counts) {
        Monomial c = pt.coarse();
        if (int j = eps_index(c * Monomial::gen("q", Rational(-1, 2)), Rational(-1, 2));
            j >= 0)
            cand.alpha_prime[j] += n;
        else if (c == Monomial::gen("q", Rational(3, 4))) cand.gamma += n;
    }
}

void finish(std::vector<RiccatiCandidate>& v) {
    std::sort(v.begin(), v.end(), candidate_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<RiccatiCandidate> grouped_search(const std::vector<Group>& groups,
                                             const RelationLattice& lattice,
                                             const Functionals& F) {
    const std::size_t NG = groups.size();
    const std::size_t nfuncs = F.funcs.size();
    const bool have_fq = F.f_q.has_value();

    // Suffix reachability interval per functional component, and suffix
    // best-completion tables for the deg2(r0) >= 0 bound: descending q-rates
    // with prefix sums, per depth and side.
    QMat suf_lo(NG + 1, QVec(nfuncs, 0)), suf_hi(NG + 1, QVec(nfuncs, 0));
    std::vector<std::vector<Rational>> best1(NG + 1, std::vector<Rational>{0}),
        best2(NG + 1, std::vector<Rational>{0});
    for (std::size_t d = NG; d-- > 0;) {
        suf_lo[d] = suf_lo[d + 1];
        suf_hi[d] = suf_hi[d + 1];
        for (std::size_t c = 0; c < nfuncs; ++c) {
            Rational contrib = groups[d].phi[c];
            if (groups[d].side == 2) contrib = -contrib;
            contrib *= Rational(groups[d].points.size());
            if (contrib < 0) suf_lo[d][c] += contrib;
            else suf_hi[d][c] += contrib;
        }
        std::vector<Rational> r1, r2;
        for (std::size_t i = d; i < NG; ++i)
            for (std::size_t t = 0; t < groups[i].points.size(); ++t) {
                if (groups[i].side == 1) r1.push_back(groups[i].rate);
                else r2.push_back(-groups[i].rate);
            }
        std::sort(r1.rbegin(), r1.rend());
        std::sort(r2.rbegin(), r2.rend());
        auto prefix = [](std::vector<Rational> v) {
            std::vector<Rational> ps{0};
            Rational s = 0;
            for (auto& x : v) ps.push_back(s += x);
            return ps;
        };
        best1[d] = prefix(std::move(r1));
        best2[d] = prefix(std::move(r2));
    }

    // Can any completion reach functional zero, equal degrees, and a
    // nonnegative rate sum?  Completions take n1 more r1-points and
    // n2 = n1 + delta more r2-points.
    auto feasible = [&](std::size_t d, const QVec& phi_sum, const Rational& rate_sum,
                        long delta) {
        for (std::size_t c = 0; c < nfuncs; ++c)
            if (phi_sum[c] + suf_lo[d][c] > 0 || phi_sum[c] + suf_hi[d][c] < 0)
                return false;
        bool any = false;
        Rational best = 0;
        for (std::size_t n1 = 0; n1 < best1[d].size(); ++n1) {
            long n2 = static_cast<long>(n1) + delta;
            if (n2 < 0 || static_cast<std::size_t>(n2) >= best2[d].size()) continue;
            Rational v = best1[d][n1] + best2[d][static_cast<std::size_t>(n2)];
            if (!any || v > best) { best = v; any = true; }
        }
        if (!any) return false;
        if (have_fq && rate_sum + best < 0) return false;
        return true;
    };

    std::vector<RiccatiCandidate> out;
    std::vector<std::size_t> counts(NG, 0);

    auto emit_selection = [&](const std::vector<std::vector<Monomial>>& sel) {
        Monomial w;
        RiccatiCandidate cand;
        for (std::size_t g = 0; g < NG; ++g)
            for (auto& pt : sel[g]) {
                if (groups[g].side == 1) {
                    w *= pt;
                    cand.r1_counts[pt.reduce_p()] += 1;
                    cand.deg_r1 += 1;
                } else {
                    w *= pt.inverse();
                    cand.r2_counts[pt.reduce_p()] += 1;
                    cand.deg_r2 += 1;
                }
            }
        auto iv = weight_condition(w, lattice);
        if (!iv) return;
        cand.deg_r0 = iv->first;
        cand.m = iv->second;
        classify(cand);
        out.push_back(std::move(cand));
    };

    // Expand one surviving count vector into explicit point selections
    // (counts[g]-subsets of each group).
    std::function<void(std::size_t, std::vector<std::vector<Monomial>>&)> expand =
        [&](std::size_t g, std::vector<std::vector<Monomial>>& sel) {
            if (g == NG) {
                emit_selection(sel);
                return;
            }
            const auto& pts = groups[g].points;
            const std::size_t c = counts[g];
            std::vector<std::size_t> idx(c);
            std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start,
                                                                       std::size_t k) {
                if (k == c) {
                    sel[g].clear();
                    for (auto i : idx) sel[g].push_back(pts[i]);
                    expand(g + 1, sel);
                    return;
                }
                for (std::size_t i = start; i + (c - k) <= pts.size(); ++i) {
                    idx[k] = i;
                    choose(i + 1, k + 1);
                }
            };
            choose(0, 0);
        };

    std::function<void(std::size_t, QVec, Rational, long)> dfs =
        [&](std::size_t d, QVec phi_sum, Rational rate_sum, long delta) {
            if (!feasible(d, phi_sum, rate_sum, delta)) return;
            if (d == NG) {
                if (delta != 0) return;
                std::vector<std::vector<Monomial>> sel(NG);
                expand(0, sel);
                return;
            }
            const Group& g = groups[d];
            for (std::size_t c = 0; c <= g.points.size(); ++c) {
                counts[d] = c;
                QVec phi2 = phi_sum;
                for (std::size_t ci = 0; ci < nfuncs; ++ci)
                    phi2[ci] += Rational(c) * (g.side == 1 ? g.phi[ci] : -g.phi[ci]);
                Rational rate2 =
                    rate_sum + Rational(c) * (g.side == 1 ? g.rate : -g.rate);
                long delta2 = delta + static_cast<long>(c) * (g.side == 1 ? 1 : -1);
                dfs(d + 1, std::move(phi2), std::move(rate2), delta2);
            }
            counts[d] = 0;
        };
    dfs(0, QVec(nfuncs, 0), 0, 0);
    finish(out);
    return out;
}

}  // namespace

std::vector<RiccatiCandidate> general_riccati_enumerator(const Divisor& p2_div,
                                                         const Divisor& sigma_inv_p3_div,
                                                         const RelationLattice& lattice,
                                                         const Int& budget) {
    Int units = p2_div.degree();
    if (sigma_inv_p3_div.degree() > units) units = sigma_inv_p3_div.degree();
    if (units > budget)
        throw BudgetExceededError("riccati enumeration over divisors of degree " + units.str() +
                                  " exceeds budget " + budget.str());
    Functionals F = build_functionals(lattice, all_points(p2_div, sigma_inv_p3_div));
    return grouped_search(build_groups(p2_div, sigma_inv_p3_div, F), lattice, F);
}

std::vector<RiccatiCandidate> general_riccati_enumerator(
    const ThetaQuotient& p2, const ThetaQuotient& p3,
    const std::shared_ptr<const RelationLattice>& lattice, const Int& budget) {
    return general_riccati_enumerator(p2.divisor(lattice), p3.sigma(-1).divisor(lattice),
                                      *lattice, budget);
}

std::vector<RiccatiCandidate> riccati_constraint_search(const Divisor& p2_div,
                                                        const Divisor& sigma_inv_p3_div,
                                                        const RelationLattice& lattice,
                                                        BalancingCase c) {
    if (!(lattice == case_lattice(c)))
        throw NonGenericLatticeError(
            "constraint search requires the exact case-(A)/(B) balancing lattice");
    for (auto& [pt, n] : p2_div.terms())
        if (n != 1) throw Error("constraint search assumes multiplicity-1 support");
    for (auto& [pt, n] : sigma_inv_p3_div.terms())
        if (n != 1) throw Error("constraint search assumes multiplicity-1 support");
    Functionals F = build_functionals(lattice, all_points(p2_div, sigma_inv_p3_div));
    return grouped_search(build_groups(p2_div, sigma_inv_p3_div, F), lattice, F);
}

bool constant_solution_eliminated(const std::vector<Monomial>& nu_factors,
                                  const RelationLattice& lattice) {
    for (auto& f : nu_factors) {
        if (!f.is_torsion_free()) continue;
        auto sol = lattice.tracked_solve(f, {"p"});
        if (sol && affine_integer_point(*sol)) return false;  // nu = 0
    }
    return true;
}

TelescoperResult telescoper_obstruction(const ThetaQuotient& b,
                                        const RelationLattice& lattice) {
    auto lat = std::make_shared<const RelationLattice>(lattice);
    Divisor d = b.divisor(lat);
    if (d.empty())
        throw EmptyDivisorError("b has empty divisor: delta(b)/b = 0 admits the zero "
                                "telescoper");
    const int k = b.level();
    std::vector<Monomial> support;
    for (auto& [pt, n] : d.terms()) support.push_back(pt);

    TelescoperResult res;
    bool found_witness = false;
    for (auto& omega : support) {
        bool has_partner = false;
        for (auto& omega2 : support) {
            Monomial ratio = omega2 / omega;
            if (!ratio.is_torsion_free()) continue;
            auto sol = lattice.tracked_solve(ratio, {"q", "p"});
            if (!sol) continue;
            // ell counts q_k-powers: ell = k * (q-exponent)
            AffineSet scaled = *sol;
            scaled.particular[0] *= k;
            for (auto& dd : scaled.dirs) dd[0] *= k;
            auto w = affine_integer_point(scaled, 0);
            if (w) {
                has_partner = true;
                res.collisions.push_back({omega, omega2, (*w)[0]});
            }
        }
        if (!has_partner && !found_witness) {
            res.witness = omega;
            found_witness = true;
        }
    }
    res.obstructed = found_witness;
    return res;
}

const char* reason_name(ReasonKind k) {
    switch (k) {
        case ReasonKind::riccati_candidate: return "riccati_candidate";
        case ReasonKind::constant_solution_possible: return "constant_solution_possible";
        case ReasonKind::telescoper_orbit_collision: return "telescoper_orbit_collision";
        case ReasonKind::nu_zero: return "nu_zero";
        case ReasonKind::non_generic_lattice: return "non_generic_lattice";
        case ReasonKind::empty_divisor_b: return "empty_divisor_b";
    }
    return "?";
}

Verdict transcendence_verdict(const std::vector<Monomial>& eps, BalancingCase c,
                              const RelationLattice& lattice,
                              const std::optional<ThetaQuotient>& b_override) {
    Verdict v;
    const bool generic = lattice == case_lattice(c);
    if (!generic)
        v.reasons.push_back({ReasonKind::non_generic_lattice,
                             "lattice carries relations beyond the case balancing; the "
                             "structure arguments assume genericity",
                             std::nullopt, std::nullopt});

    HypergeometricData data = build_hypergeometric(eps, lattice);
    auto lat = std::make_shared<const RelationLattice>(lattice);
    Divisor d2 = data.p2.divisor(lat);
    Divisor d3s = data.p3.sigma(-1).divisor(lat);

    std::vector<RiccatiCandidate> candidates =
        generic ? riccati_constraint_search(d2, d3s, lattice, c)
                : general_riccati_enumerator(d2, d3s, lattice, Int(128));
    std::size_t reported = 0, skipped = 0;
    for (auto& cand : candidates) {
        if (cand.is_zero()) continue;
        if (reported < 10) {
            v.reasons.push_back({ReasonKind::riccati_candidate,
                                 "Riccati structure admits " + cand.str(), cand,
                                 std::nullopt});
            ++reported;
        } else {
            ++skipped;
        }
    }
    if (skipped > 0)
        v.reasons.push_back({ReasonKind::riccati_candidate,
                             "and " + std::to_string(skipped) +
                                 " further Riccati candidates (omitted)",
                             std::nullopt, std::nullopt});
    if (!constant_solution_eliminated(data.nu_factors, lattice)) {
        v.reasons.push_back({ReasonKind::nu_zero,
                             "nu = 0 under the lattice (some eps_j*eps_8/q lies in p^Z); "
                             "constant Riccati solutions are not excluded",
                             std::nullopt, std::nullopt});
        v.reasons.push_back({ReasonKind::constant_solution_possible,
                             "the constant candidate v survives", std::nullopt,
                             std::nullopt});
    }

    try {
        TelescoperResult t =
            telescoper_obstruction(b_override ? *b_override : data.b, lattice);
        if (!t.obstructed) {
            for (auto& col : t.collisions)
                v.reasons.push_back(
                    {ReasonKind::telescoper_orbit_collision,
                     "[" + col.omega.str() + "] and [" + col.omega_prime.str() +
                         "] differ by q^" + col.ell.str() + " mod p^Z",
                     std::nullopt, col});
        }
    } catch (const EmptyDivisorError& e) {
        v.reasons.push_back(
            {ReasonKind::empty_divisor_b, e.what(), std::nullopt, std::nullopt});
    }

    v.outcome = v.reasons.empty() ? Outcome::Transcendental : Outcome::Inconclusive;
    return v;
}

}  // namespace ehq
