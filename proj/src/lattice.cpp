#include "ehq/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace ehq {

namespace {

void row_axpy(IVec& dst, const IVec& src, const Int& c) {
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] -= c * src[j];
}

// Floor division for cpp_int.
Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

// Row HNF of A by integer row operations; the same operations are applied to
// U (pass identity to recover the transform, or leave empty to skip).
// Returns the number of pivot rows; rows beyond it are zero.
std::size_t hnf_in_place(IMat& A, IMat* U) {
    const std::size_t m = A.size();
    const std::size_t n = m ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // Euclidean sweep: shrink column c below row r until one nonzero left.
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (A[i][c] != 0 && (best == m || abs(A[i][c]) < abs(A[best][c]))) best = i;
            if (best == m) break;
            std::swap(A[r], A[best]);
            if (U) std::swap((*U)[r], (*U)[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (A[i][c] == 0) continue;
                Int q = floor_div(A[i][c], A[r][c]);
                row_axpy(A[i], A[r], q);
                if (U) row_axpy((*U)[i], (*U)[r], q);
                if (A[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (A[r][c] == 0) continue;
        if (A[r][c] < 0) {
            for (auto& x : A[r]) x = -x;
            if (U)
                for (auto& x : (*U)[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(A[i][c], A[r][c]);
            if (q == 0) continue;
            row_axpy(A[i], A[r], q);
            if (U) row_axpy((*U)[i], (*U)[r], q);
        }
        ++r;
    }
    return r;
}

// Gaussian elimination to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMat& M) {
    const std::size_t m = M.size();
    const std::size_t n = m ? M[0].size() : 0;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = m;
        for (std::size_t i = r; i < m; ++i)
            if (M[i][c] != 0) { piv = i; break; }
        if (piv == m) continue;
        std::swap(M[r], M[piv]);
        Rational inv = M[r][c];
        for (auto& x : M[r]) x /= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rational f = M[i][c];
            for (std::size_t j = 0; j < n; ++j) M[i][j] -= f * M[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Extended gcd: g = gcd(a,b) >= 0 with x*a + y*b = g.
Int ext_gcd(Int a, Int b, Int& x, Int& y) {
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        Int q = a / b;
        a -= q * b; std::swap(a, b);
        x0 -= q * x1; std::swap(x0, x1);
        y0 -= q * y1; std::swap(y0, y1);
    }
    if (a < 0) { a = -a; x0 = -x0; y0 = -y0; }
    x = x0; y = y0;
    return a;
}

Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

IMat hnf_rows(IMat rows) {
    std::size_t r = hnf_in_place(rows, nullptr);
    rows.resize(r);
    return rows;
}

IMat integer_kernel(const IMat& C) {
    IMat A = C;
    const std::size_t m = A.size();
    IMat U(m, IVec(m, 0));
    for (std::size_t i = 0; i < m; ++i) U[i][i] = 1;
    std::size_t r = hnf_in_place(A, &U);
    IMat ker(U.begin() + static_cast<std::ptrdiff_t>(r), U.end());
    return hnf_rows(std::move(ker));
}

QMat rational_right_kernel(const QMat& M) {
    QMat R = M;
    const std::size_t n = R.empty() ? 0 : R[0].size();
    auto pivots = rref(R);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    QMat basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        QVec v(n, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -R[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Int>> affine_integer_point(const AffineSet& s, int nonzero_idx) {
    const std::size_t t = s.particular.size();
    if (t == 0) return std::vector<Int>{};
    if (t > 2) throw Error("affine_integer_point: more than two tracked coordinates");

    // Rational row space of the projected directions.
    QMat D = s.dirs;
    for (auto& row : D)
        if (row.size() != t) throw Error("affine_integer_point: ragged direction");
    auto pivots = rref(D);
    const std::size_t dim = pivots.size();

    auto finish = [&](std::vector<Int> w) -> std::optional<std::vector<Int>> {
        if (nonzero_idx >= 0 && w[static_cast<std::size_t>(nonzero_idx)] == 0) return std::nullopt;
        return w;
    };

    if (dim == t) {
        // Every rational point is reachable.
        std::vector<Int> w(t, 0);
        if (nonzero_idx >= 0) w[static_cast<std::size_t>(nonzero_idx)] = 1;
        return w;
    }
    if (dim == 0) {
        std::vector<Int> w;
        for (auto& x : s.particular) {
            if (!is_integer(x)) return std::nullopt;
            w.push_back(rat_num(x));
        }
        return finish(std::move(w));
    }

    // t == 2, dim == 1: a rational line (a0,b0) + Q*(u,w).
    Rational u = D[0][0], wv = D[0][1];
    const Rational a0 = s.particular[0], b0 = s.particular[1];
    if (u == 0) {
        if (!is_integer(a0)) return std::nullopt;
        Int a = rat_num(a0);
        Int b = (nonzero_idx == 1) ? Int(1) : Int(0);
        if (nonzero_idx == 0 && a == 0) return std::nullopt;
        return std::vector<Int>{a, b};
    }
    if (wv == 0) {
        if (!is_integer(b0)) return std::nullopt;
        Int b = rat_num(b0);
        Int a = (nonzero_idx == 0) ? Int(1) : Int(0);
        if (nonzero_idx == 1 && b == 0) return std::nullopt;
        return std::vector<Int>{a, b};
    }
    // Both components move: b = beta + a*alpha with a free over Q; solve the
    // congruence that makes both integers.
    Rational alpha = wv / u;
    Rational beta = b0 - a0 * alpha;
    Int x = rat_num(alpha), y = rat_den(alpha);  // y > 0, gcd(x,y)=1
    Int r = rat_num(beta), sden = rat_den(beta);
    if (y % sden != 0) return std::nullopt;  // s must divide y for any solution
    // a*x == -r*y/s (mod y)
    Int rhs = mod_pos(-r * (y / sden), y);
    Int xi, eta;
    Int g = ext_gcd(mod_pos(x, y), y, xi, eta);
    (void)g;  // gcd(x,y)=1
    Int a = mod_pos(rhs * xi, y);
    if (a > y / 2) a -= y;  // small representative
    auto make = [&](const Int& av) -> std::optional<std::vector<Int>> {
        Rational bq = beta + Rational(av) * alpha;
        if (!is_integer(bq)) return std::nullopt;
        std::vector<Int> w{av, rat_num(bq)};
        if (nonzero_idx >= 0 && w[static_cast<std::size_t>(nonzero_idx)] == 0) return std::nullopt;
        return w;
    };
    if (auto w = make(a)) return w;
    if (auto w = make(a + y)) return w;
    if (auto w = make(a - y)) return w;
    return std::nullopt;
}

std::optional<std::pair<Int, Int>> affine_integer_point_min_nonneg(const AffineSet& s) {
    if (s.particular.size() != 2)
        throw Error("affine_integer_point_min_nonneg: expects two tracked coordinates");
    QMat D = s.dirs;
    auto pivots = rref(D);
    const std::size_t dim = pivots.size();
    const Rational a0 = s.particular[0], b0 = s.particular[1];

    if (dim == 2) return std::make_pair(Int(0), Int(0));
    if (dim == 0) {
        if (!is_integer(a0) || !is_integer(b0) || a0 < 0) return std::nullopt;
        return std::make_pair(rat_num(a0), rat_num(b0));
    }
    Rational u = D[0][0], wv = D[0][1];
    if (u == 0) {
        if (!is_integer(a0) || a0 < 0) return std::nullopt;
        return std::make_pair(rat_num(a0), Int(0));
    }
    if (wv == 0) {
        if (!is_integer(b0)) return std::nullopt;
        return std::make_pair(Int(0), rat_num(b0));
    }
    // x free along the line; y = beta + x*alpha.  Solve the congruence and
    // take the smallest nonnegative x.
    Rational alpha = wv / u;
    Rational beta = b0 - a0 * alpha;
    Int x = rat_num(alpha), y = rat_den(alpha);
    Int r = rat_num(beta), sden = rat_den(beta);
    if (y % sden != 0) return std::nullopt;
    Int rhs = mod_pos(-r * (y / sden), y);
    Int xi, eta;
    ext_gcd(mod_pos(x, y), y, xi, eta);
    Int a = mod_pos(rhs * xi, y);  // smallest nonnegative solution
    Rational bq = beta + Rational(a) * alpha;
    if (!is_integer(bq)) return std::nullopt;
    return std::make_pair(a, rat_num(bq));
}

std::optional<QVec> solve_rational(const QMat& A, const QVec& rhs) {
    const std::size_t m = A.size();
    if (rhs.size() != m) throw Error("solve_rational: rhs size mismatch");
    const std::size_t n = m ? A[0].size() : 0;
    QMat M(m, QVec(n + 1, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) M[i][j] = A[i][j];
        M[i][n] = rhs[i];
    }
    auto pivots = rref(M);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    QVec x(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = M[i][n];
    return x;
}

RelationLattice RelationLattice::empty(std::vector<std::string> gens) {
    RelationLattice L;
    L.gens_ = std::move(gens);
    return L;
}

RelationLattice RelationLattice::from_rows(std::vector<std::string> gens, IMat rows) {
    RelationLattice L;
    for (auto& row : rows)
        if (row.size() != gens.size())
            throw Error("relation row length does not match generator count");
    L.gens_ = std::move(gens);
    L.basis_ = hnf_rows(std::move(rows));
    return L;
}

std::optional<AffineSet> RelationLattice::tracked_solve(
    const Monomial& m, const std::vector<std::string>& tracked) const {
    if (!m.is_torsion_free()) return std::nullopt;

    // Column space: one unknown per tracked generator, then one per basis row.
    std::vector<std::string> all = gens_;
    for (auto& g : tracked)
        if (std::find(all.begin(), all.end(), g) == all.end()) all.push_back(g);
    for (auto& [g, e] : m.exponents())
        if (std::find(all.begin(), all.end(), g) == all.end()) all.push_back(g);
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < all.size(); ++i) idx[all[i]] = i;

    const std::size_t t = tracked.size();
    const std::size_t nvars = t + basis_.size();
    // Augmented system [A | v], row per generator in `all`.
    QMat M(all.size(), QVec(nvars + 1, 0));
    for (std::size_t j = 0; j < t; ++j) M[idx.at(tracked[j])][j] = 1;
    for (std::size_t j = 0; j < basis_.size(); ++j)
        for (std::size_t g = 0; g < gens_.size(); ++g)
            M[idx.at(gens_[g])][t + j] = Rational(basis_[j][g]);
    for (auto& [g, e] : m.exponents()) M[idx.at(g)][nvars] = e;

    auto pivots = rref(M);
    // Inconsistent iff some pivot sits in the augmented column.
    if (!pivots.empty() && pivots.back() == nvars) return std::nullopt;

    std::vector<bool> is_pivot(nvars, false);
    std::vector<std::size_t> pivot_row(nvars, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        is_pivot[pivots[i]] = true;
        pivot_row[pivots[i]] = i;
    }
    AffineSet out;
    out.particular.assign(t, 0);
    for (std::size_t j = 0; j < t; ++j)
        if (is_pivot[j]) out.particular[j] = M[pivot_row[j]][nvars];
    for (std::size_t f = 0; f < nvars; ++f) {
        if (is_pivot[f]) continue;
        QVec dir(t, 0);
        for (std::size_t j = 0; j < t; ++j) {
            if (j == f) dir[j] = 1;
            else if (is_pivot[j]) dir[j] = -M[pivot_row[j]][f];
        }
        bool nontrivial = false;
        for (auto& x : dir) nontrivial |= (x != 0);
        if (nontrivial) out.dirs.push_back(std::move(dir));
    }
    return out;
}

std::optional<std::map<std::string, Rational>> RelationLattice::member_with_exponents(
    const Monomial& m, const std::vector<std::string>& subgroup) const {
    auto sol = tracked_solve(m, subgroup);
    if (!sol) return std::nullopt;
    std::map<std::string, Rational> out;
    for (std::size_t j = 0; j < subgroup.size(); ++j) out[subgroup[j]] = sol->particular[j];
    return out;
}

bool RelationLattice::contains(const Monomial& m) const {
    return tracked_solve(m, {}).has_value();
}

RelationLattice kernel_lattice(const std::vector<std::string>& source_gens,
                               const QMat& matrix,
                               const std::vector<std::string>& target_gens,
                               const RelationLattice& target) {
    const std::size_t ns = source_gens.size();
    const std::size_t nt = target_gens.size();
    if (matrix.size() != ns) throw Error("kernel_lattice: row count != source generators");
    for (auto& row : matrix)
        if (row.size() != nt) throw Error("kernel_lattice: column count != target generators");
    if (target.gens() != target_gens)
        throw Error("kernel_lattice: target lattice generators mismatch");

    // v is a relation iff v*matrix lies in Q-span(target basis), i.e. iff it
    // is annihilated by every rational functional vanishing on that span; the
    // functionals are the right-kernel columns of the basis matrix.
    // keep at least one (zero) row so the column count survives an empty basis
    QMat B(std::max<std::size_t>(target.basis().size(), 1), QVec(nt, 0));
    for (std::size_t i = 0; i < target.basis().size(); ++i)
        for (std::size_t j = 0; j < nt; ++j) B[i][j] = Rational(target.basis()[i][j]);
    QMat funcs = rational_right_kernel(B);  // each entry: length-nt column

    // Constraint matrix C = matrix * funcs, columns scaled to integers
    // (column scaling preserves the left kernel).
    IMat C(ns, IVec(funcs.size(), 0));
    for (std::size_t c = 0; c < funcs.size(); ++c) {
        QVec col(ns, 0);
        Int lcm_den = 1;
        for (std::size_t i = 0; i < ns; ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < nt; ++j) s += matrix[i][j] * funcs[c][j];
            col[i] = s;
            lcm_den = boost::multiprecision::lcm(lcm_den, rat_den(s));
        }
        for (std::size_t i = 0; i < ns; ++i) {
            Rational scaled = col[i] * Rational(lcm_den);
            C[i][c] = rat_num(scaled);
        }
    }
    return RelationLattice::from_rows(source_gens, integer_kernel(C));
}

}  // namespace ehq
