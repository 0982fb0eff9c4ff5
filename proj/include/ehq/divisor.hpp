#pragma once

#include <map>
#include <memory>
#include <string>

#include "ehq/point.hpp"

namespace ehq {

/// Finite formal Z-combination of points of C*_k/p^Z at a stated level k.
/// Keys are stored with p-exponent reduced into [0,1); insertion falls back to
/// a point_eq scan so that lattice-equal points always merge.
class Divisor {
public:
    Divisor() = default;
    Divisor(int level, std::shared_ptr<const RelationLattice> lattice)
        : level_(level), lattice_(std::move(lattice)) {}

    int level() const { return level_; }
    const std::shared_ptr<const RelationLattice>& lattice() const { return lattice_; }
    const std::map<Monomial, Int>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Add mult*[point], merging with any point_eq-equal existing key.
    void add(const Monomial& point, const Int& mult);
    /// Multiplicity of the class of `point` (0 if absent).
    Int multiplicity(const Monomial& point) const;

    Divisor& operator+=(const Divisor& o);
    friend Divisor operator+(Divisor a, const Divisor& b) { a += b; return a; }
    Divisor operator-() const;
    friend Divisor operator-(Divisor a, const Divisor& b) { a += -b; return a; }

    /// Same classes with same multiplicities (point_eq-aware).
    bool operator==(const Divisor& o) const;

    Int degree() const;
    PointClass weight() const;

    /// Zeros of sigma^{direction}(f) sit at q_k^{-direction} times those of f:
    /// direction +1 multiplies every point by q^{-1/k}, direction -1 by
    /// q^{+1/k}.
    Divisor sigma_translate(int direction) const;

    /// Level-1 divisor pulled back along the k-power map C*_k -> C*: each
    /// class [lambda] becomes the k^2 classes [zeta_k^i lambda^{1/k} p^{j/k}].
    Divisor pullback(int k) const;

    std::string str() const;

private:
    int level_ = 1;
    std::shared_ptr<const RelationLattice> lattice_;
    std::map<Monomial, Int> terms_;  // keys p-reduced, values nonzero
};

}  // namespace ehq
