#include "paralab/jet.hpp"

#include <cmath>

namespace paralab {

void Jet3::set_third(int i, int j, int k, double v) {
    const size_t n = static_cast<size_t>(n_);
    const size_t a = static_cast<size_t>(i), b = static_cast<size_t>(j), c = static_cast<size_t>(k);
    third_[(a * n + b) * n + c] = v;
    third_[(a * n + c) * n + b] = v;
    third_[(b * n + a) * n + c] = v;
    third_[(b * n + c) * n + a] = v;
    third_[(c * n + a) * n + b] = v;
    third_[(c * n + b) * n + a] = v;
}

Jet3 Jet3::operator-() const {
    Jet3 r(n_);
    r.value_ = -value_;
    for (size_t i = 0; i < grad_.size(); ++i) r.grad_[i] = -grad_[i];
    for (size_t i = 0; i < hess_.size(); ++i) r.hess_[i] = -hess_[i];
    for (size_t i = 0; i < third_.size(); ++i) r.third_[i] = -third_[i];
    return r;
}

Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 r(a.n_);
    r.value_ = a.value_ + b.value_;
    for (size_t i = 0; i < a.grad_.size(); ++i) r.grad_[i] = a.grad_[i] + b.grad_[i];
    for (size_t i = 0; i < a.hess_.size(); ++i) r.hess_[i] = a.hess_[i] + b.hess_[i];
    for (size_t i = 0; i < a.third_.size(); ++i) r.third_[i] = a.third_[i] + b.third_[i];
    return r;
}

Jet3 operator-(const Jet3& a, const Jet3& b) {
    Jet3 r(a.n_);
    r.value_ = a.value_ - b.value_;
    for (size_t i = 0; i < a.grad_.size(); ++i) r.grad_[i] = a.grad_[i] - b.grad_[i];
    for (size_t i = 0; i < a.hess_.size(); ++i) r.hess_[i] = a.hess_[i] - b.hess_[i];
    for (size_t i = 0; i < a.third_.size(); ++i) r.third_[i] = a.third_[i] - b.third_[i];
    return r;
}

// Leibniz rule through order 3.  Only canonical index triples are computed;
// mirrors are copied so the result is exactly symmetric.
Jet3 operator*(const Jet3& a, const Jet3& b) {
    const int n = a.n_;
    Jet3 r(n);
    r.value_ = a.value_ * b.value_;
    for (int i = 0; i < n; ++i)
        r.grad(i) = a.grad(i) * b.value_ + a.value_ * b.grad(i);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = a.hess(i, j) * b.value_ + a.grad(i) * b.grad(j) +
                             a.grad(j) * b.grad(i) + a.value_ * b.hess(i, j);
            r.set_hess(i, j, v);
        }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const double v = a.third(i, j, k) * b.value_
                               + a.hess(i, j) * b.grad(k)
                               + a.hess(i, k) * b.grad(j)
                               + a.hess(j, k) * b.grad(i)
                               + a.grad(i) * b.hess(j, k)
                               + a.grad(j) * b.hess(i, k)
                               + a.grad(k) * b.hess(i, j)
                               + a.value_ * b.third(i, j, k);
                r.set_third(i, j, k, v);
            }
    return r;
}

Jet3 operator/(const Jet3& a, const Jet3& b) {
    if (b.value() == 0.0) throw EvalError("division by zero");
    const double u = b.value();
    // 1/b via the chain rule, then one multiplication.
    const Jet3 inv = b.compose(1.0 / u, -1.0 / (u * u), 2.0 / (u * u * u),
                               -6.0 / (u * u * u * u));
    return a * inv;
}

Jet3 operator*(double s, const Jet3& a) {
    Jet3 r = a;
    r.value_ *= s;
    for (auto& v : r.grad_) v *= s;
    for (auto& v : r.hess_) v *= s;
    for (auto& v : r.third_) v *= s;
    return r;
}

Jet3 operator+(const Jet3& a, double s) {
    Jet3 r = a;
    r.value_ += s;
    return r;
}

// Multivariate Faa di Bruno truncated at order 3:
//   (h o u)_i   = h1 u_i
//   (h o u)_ij  = h2 u_i u_j + h1 u_ij
//   (h o u)_ijk = h3 u_i u_j u_k
//               + h2 (u_ij u_k + u_ik u_j + u_jk u_i) + h1 u_ijk
Jet3 Jet3::compose(double h0, double h1, double h2, double h3) const {
    const int n = n_;
    Jet3 r(n);
    r.value_ = h0;
    for (int i = 0; i < n; ++i) r.grad(i) = h1 * grad(i);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            r.set_hess(i, j, h2 * grad(i) * grad(j) + h1 * hess(i, j));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                const double v = h3 * grad(i) * grad(j) * grad(k)
                               + h2 * (hess(i, j) * grad(k) + hess(i, k) * grad(j) +
                                       hess(j, k) * grad(i))
                               + h1 * third(i, j, k);
                r.set_third(i, j, k, v);
            }
    return r;
}

Jet3 Jet3::pow_int(long long k) const {
    if (k == 0) return Jet3::constant(n_, 1.0);
    if (k < 0) {
        if (value_ == 0.0) throw EvalError("zero raised to a negative power");
        const Jet3 p = pow_int(-k);
        return Jet3::constant(n_, 1.0) / p;
    }
    Jet3 acc = *this;
    for (long long i = 1; i < k; ++i) acc = acc * (*this);
    return acc;
}

bool Jet3::finite() const {
    if (!std::isfinite(value_)) return false;
    for (double v : grad_)
        if (!std::isfinite(v)) return false;
    for (double v : hess_)
        if (!std::isfinite(v)) return false;
    for (double v : third_)
        if (!std::isfinite(v)) return false;
    return true;
}

double Jet3::max_abs() const {
    double m = std::abs(value_);
    for (double v : grad_) m = std::max(m, std::abs(v));
    for (double v : hess_) m = std::max(m, std::abs(v));
    for (double v : third_) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace paralab
