#include <random>

#include "doctest.h"
#include "ehq/criteria.hpp"
#include "ehq/lattice.hpp"
#include "ehq/monomial.hpp"
#include "ehq/point.hpp"

using namespace ehq;

namespace {

Rational get(const std::map<std::string, Rational>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? Rational(0) : it->second;
}

std::shared_ptr<const RelationLattice> shared_case_a() {
    static auto l = std::make_shared<const RelationLattice>(case_lattice(BalancingCase::A));
    return l;
}

}  // namespace

TEST_CASE("monomial multiplication and normalization") {
    Monomial half = Monomial::gen("e1", Rational(1, 2));
    CHECK(half * half == Monomial::gen("e1"));

    Monomial minus = Monomial::root_of_unity(Rational(1, 2));
    CHECK((minus * minus).is_identity());

    Monomial a = Monomial::gen("q", Rational(1, 4)) * Monomial::gen("p");
    Monomial b = Monomial::gen("q", Rational(3, 4)) * Monomial::gen("p", -1);
    CHECK(a * b == Monomial::gen("q"));

    // no zero entries survive
    CHECK((Monomial::gen("x") * Monomial::gen("x", -1)).exponents().empty());
    CHECK(Monomial::root_of_unity(Rational(5, 4)).torsion() == Rational(1, 4));
}

TEST_CASE("lemma-3 substitution kernel") {
    // eps_j = q / (c t_j) for j <= 5, eps_6 = p^4 c t_8, eps_7 = c / (q t_8),
    // with c = sqrt(t_6 t_7); target balancing prod t_j = p^2 q^2.
    std::vector<std::string> src = {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "p", "q"};
    std::vector<std::string> tgt = {"t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "p", "q"};
    QMat m(src.size(), QVec(tgt.size(), 0));
    for (int j = 0; j < 5; ++j) {
        m[j][j] = -1;
        m[j][5] = Rational(-1, 2);
        m[j][6] = Rational(-1, 2);
        m[j][9] = 1;
    }
    m[5][5] = Rational(1, 2);
    m[5][6] = Rational(1, 2);
    m[5][7] = 1;
    m[5][8] = 4;
    m[6][5] = Rational(1, 2);
    m[6][6] = Rational(1, 2);
    m[6][7] = -1;
    m[6][9] = -1;
    m[7][8] = 1;
    m[8][9] = 1;

    RelationLattice target = RelationLattice::from_rows(
        tgt, {{1, 1, 1, 1, 1, 1, 1, 1, -2, -2}});
    RelationLattice kernel = kernel_lattice(src, m, tgt, target);
    IMat expect = {{1, 1, 1, 1, 1, 1, 2, -2, -1}};
    CHECK(kernel.basis() == expect);

    SUBCASE("identity substitution, empty target lattice") {
        QMat id = {{1, 0}, {0, 1}};
        RelationLattice k2 = kernel_lattice({"a", "b"}, id, {"x", "y"},
                                            RelationLattice::empty({"x", "y"}));
        CHECK(k2.basis().empty());
    }
    SUBCASE("two sources mapping to the same target") {
        QMat mm = {{1}, {1}};
        RelationLattice k3 = kernel_lattice({"a", "b"}, mm, {"x"},
                                            RelationLattice::empty({"x"}));
        CHECK(k3.basis() == IMat{{1, -1}});
    }
}

TEST_CASE("subgroup membership with exponents") {
    RelationLattice lat = case_lattice(BalancingCase::A);
    std::vector<std::string> pq = {"p", "q"};

    Monomial prod_sq;
    for (const auto& e : param_epsilons()) prod_sq *= e.pow(2);
    auto r = lat.member_with_exponents(prod_sq, pq);
    REQUIRE(r.has_value());
    CHECK(get(*r, "p") == 4);
    CHECK(get(*r, "q") == 4);

    auto r2 = lat.member_with_exponents(Monomial::gen("q", 3), pq);
    REQUIRE(r2.has_value());
    CHECK(get(*r2, "p") == 0);
    CHECK(get(*r2, "q") == 3);

    CHECK_FALSE(lat.member_with_exponents(Monomial::gen("e1"), pq).has_value());
    // torsion never belongs to a torsion-free subgroup
    CHECK_FALSE(lat.member_with_exponents(Monomial::root_of_unity(Rational(1, 2)), pq)
                    .has_value());
}

TEST_CASE("point equality on C*_k / p^Z") {
    auto lat = shared_case_a();
    Monomial se1 = Monomial::gen("e1", Rational(1, 2));

    PointClass a(2, se1, lat);
    PointClass b(2, Monomial::gen("p") * se1, lat);
    CHECK(point_eq(a, b));

    PointClass c(2, Monomial::root_of_unity(Rational(1, 2)) * se1, lat);
    CHECK_FALSE(point_eq(a, c));

    Monomial qi = Monomial::gen("q", -1);
    PointClass d(1, qi * Monomial::gen("e1"), lat);
    PointClass e(1, qi * Monomial::gen("e2"), lat);
    CHECK_FALSE(point_eq(d, e));

    CHECK_THROWS_AS((void)point_eq(a, d), LevelMismatchError);
}

TEST_CASE("hermite normal form idempotence (property)") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> ent(-5, 5);
    for (int trial = 0; trial < 200; ++trial) {
        IMat rows(3, IVec(5));
        for (auto& r : rows)
            for (auto& x : r) x = ent(rng);
        IMat h = hnf_rows(rows);
        CHECK(hnf_rows(h) == h);
    }
}

TEST_CASE("kernel_lattice rows re-multiply into the target hull (property)") {
    std::mt19937 rng(102);
    std::uniform_int_distribution<int> ent(-3, 3), den(1, 2), coin(0, 1);
    std::vector<std::string> src = {"a", "b", "c", "d"};
    std::vector<std::string> tgt = {"x", "y", "z"};
    for (int trial = 0; trial < 200; ++trial) {
        QMat m(src.size(), QVec(tgt.size()));
        for (auto& row : m)
            for (auto& e : row) e = Rational(ent(rng), den(rng));
        RelationLattice target = RelationLattice::empty(tgt);
        if (coin(rng)) {
            IVec rel = {ent(rng), ent(rng), ent(rng)};
            target = RelationLattice::from_rows(tgt, {rel});
        }
        RelationLattice kernel = kernel_lattice(src, m, tgt, target);
        // the kernel is defined against the rational span of the target
        // relations: every functional vanishing on that span must kill the
        // image of every kernel vector
        QMat B(target.basis().size(), QVec(tgt.size(), 0));
        for (std::size_t i = 0; i < target.basis().size(); ++i)
            for (std::size_t j = 0; j < tgt.size(); ++j)
                B[i][j] = Rational(target.basis()[i][j]);
        QMat funcs = rational_right_kernel(B);
        for (const auto& v : kernel.basis()) {
            QVec w(tgt.size(), 0);
            for (std::size_t t = 0; t < tgt.size(); ++t)
                for (std::size_t s = 0; s < src.size(); ++s)
                    w[t] += Rational(v[s]) * m[s][t];
            for (const auto& f : funcs) {
                Rational dot = 0;
                for (std::size_t t = 0; t < tgt.size(); ++t) dot += w[t] * f[t];
                CHECK(dot == 0);
            }
        }
    }
}

TEST_CASE("membership round-trip (property)") {
    std::mt19937 rng(103);
    std::uniform_int_distribution<int> ent(-4, 4);
    RelationLattice lat = case_lattice(BalancingCase::A);
    Monomial balancing = Monomial::gen("p", -2) * Monomial::gen("q", -2);
    for (const auto& e : param_epsilons()) balancing *= e;
    std::vector<std::string> pq = {"p", "q"};
    for (int trial = 0; trial < 200; ++trial) {
        int a = ent(rng), b = ent(rng), k = ent(rng);
        Monomial m = Monomial::gen("p", a) * Monomial::gen("q", b) * balancing.pow(k);
        auto r = lat.member_with_exponents(m, pq);
        REQUIRE(r.has_value());
        Monomial recon = Monomial::gen("p", get(*r, "p")) * Monomial::gen("q", get(*r, "q"));
        CHECK(lat.contains(m / recon));
    }
}

TEST_CASE("point_eq is an equivalence relation (property)") {
    std::mt19937 rng(104);
    std::uniform_int_distribution<int> pick(0, 7), shift(-2, 2), coin(0, 1);
    auto lat = shared_case_a();
    std::vector<PointClass> pool;
    for (int i = 0; i < 24; ++i) {
        Monomial m = Monomial::gen("e" + std::to_string(1 + pick(rng) % 8), Rational(1, 2));
        m *= Monomial::gen("p", shift(rng));
        if (coin(rng)) m *= Monomial::root_of_unity(Rational(1, 2));
        pool.emplace_back(2, m, lat);
    }
    for (const auto& x : pool) CHECK(point_eq(x, x));
    std::uniform_int_distribution<std::size_t> idx(0, pool.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const auto &x = pool[idx(rng)], &y = pool[idx(rng)], &z = pool[idx(rng)];
        CHECK(point_eq(x, y) == point_eq(y, x));
        if (point_eq(x, y) && point_eq(y, z)) CHECK(point_eq(x, z));
    }
}
