#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace paralab {

// Raised when an evaluation leaves the domain of a field operation
// (division by zero, log/sqrt of a nonpositive value, ...).  Carries the
// offending operation name so callers can report the exact subexpression.
class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Truncated Taylor coefficient stack of a scalar function at one point:
// value, gradient, Hessian and third derivative, exact to roundoff.
//
// hess and third are stored dense with every symmetric copy filled.  All
// arithmetic writes the canonical slot (i <= j <= k) once and mirrors it,
// so symmetry holds bit-for-bit, not just within tolerance.
class Jet3 {
public:
    explicit Jet3(int dim)
        : n_(dim), value_(0.0), grad_(static_cast<size_t>(dim), 0.0),
          hess_(static_cast<size_t>(dim) * dim, 0.0),
          third_(static_cast<size_t>(dim) * dim * dim, 0.0) {
        if (dim < 1) throw std::invalid_argument("Jet3: dimension must be positive");
    }

    static Jet3 constant(int dim, double value) {
        Jet3 j(dim);
        j.value_ = value;
        return j;
    }

    // The seed for coordinate x^index: value v, unit gradient slot, rest zero.
    static Jet3 coordinate(int dim, int index, double value) {
        Jet3 j(dim);
        if (index < 0 || index >= dim) throw std::invalid_argument("Jet3: coordinate index out of range");
        j.value_ = value;
        j.grad_[static_cast<size_t>(index)] = 1.0;
        return j;
    }

    int dim() const { return n_; }
    double value() const { return value_; }
    double grad(int i) const { return grad_[static_cast<size_t>(i)]; }
    double hess(int i, int j) const { return hess_[static_cast<size_t>(i) * n_ + j]; }
    double third(int i, int j, int k) const {
        return third_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
    }

    double& value() { return value_; }
    double& grad(int i) { return grad_[static_cast<size_t>(i)]; }

    // Writes all permutations of one Hessian / third-derivative entry.
    void set_hess(int i, int j, double v) {
        hess_[static_cast<size_t>(i) * n_ + j] = v;
        hess_[static_cast<size_t>(j) * n_ + i] = v;
    }
    void set_third(int i, int j, int k, double v);

    Jet3 operator-() const;
    friend Jet3 operator+(const Jet3& a, const Jet3& b);
    friend Jet3 operator-(const Jet3& a, const Jet3& b);
    friend Jet3 operator*(const Jet3& a, const Jet3& b);
    friend Jet3 operator/(const Jet3& a, const Jet3& b);  // throws EvalError on b.value() == 0

    friend Jet3 operator*(double s, const Jet3& a);
    friend Jet3 operator+(const Jet3& a, double s);

    // Chain rule for a smooth univariate h applied to this jet, given the
    // derivatives h(u), h'(u), h''(u), h'''(u) at u = value().
    Jet3 compose(double h0, double h1, double h2, double h3) const;

    // Repeated multiplication; negative exponents go through the reciprocal
    // and require a nonzero value.  k == 0 yields the constant 1.
    Jet3 pow_int(long long k) const;

    bool finite() const;  // every stored coefficient is finite
    double max_abs() const;

private:
    int n_;
    double value_;
    std::vector<double> grad_, hess_, third_;
};

}  // namespace paralab
