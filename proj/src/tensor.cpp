#include "paralab/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace paralab {

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double LabeledTensor::max_abs() const { return paralab::max_abs(data_); }

LabeledTensor contract(const LabeledTensor& t, int up_slot, int down_slot) {
    const int r = t.rank();
    if (up_slot < 0 || up_slot >= r || down_slot < 0 || down_slot >= r)
        throw std::invalid_argument("contract: slot out of range");
    if (up_slot == down_slot) throw std::invalid_argument("contract: slots must differ");
    if (t.variances()[static_cast<size_t>(up_slot)] != Variance::Up ||
        t.variances()[static_cast<size_t>(down_slot)] != Variance::Down)
        throw std::invalid_argument("contract: variance mismatch");

    std::vector<Variance> out_var;
    for (int s = 0; s < r; ++s)
        if (s != up_slot && s != down_slot) out_var.push_back(t.variances()[static_cast<size_t>(s)]);
    LabeledTensor out(t.dim(), out_var);

    const int n = t.dim();
    std::vector<int> src(static_cast<size_t>(r), 0);
    std::vector<int> dst(out_var.size(), 0);
    // iterate over all result indices, then sum the paired slot
    const size_t total = out.data().size();
    for (size_t f = 0; f < total; ++f) {
        size_t rem = f;
        for (int s = static_cast<int>(out_var.size()) - 1; s >= 0; --s) {
            dst[static_cast<size_t>(s)] = static_cast<int>(rem % static_cast<size_t>(n));
            rem /= static_cast<size_t>(n);
        }
        int w = 0;
        for (int s = 0; s < r; ++s)
            if (s != up_slot && s != down_slot) src[static_cast<size_t>(s)] = dst[static_cast<size_t>(w++)];
        double sum = 0.0;
        for (int a = 0; a < n; ++a) {
            src[static_cast<size_t>(up_slot)] = a;
            src[static_cast<size_t>(down_slot)] = a;
            sum += t.at(src);
        }
        out.data()[f] = sum;
    }
    return out;
}

LabeledTensor move_index(const LabeledTensor& t, int slot, const LabeledTensor& metric,
                         MoveDirection direction) {
    const int r = t.rank();
    const int n = t.dim();
    if (slot < 0 || slot >= r) throw std::invalid_argument("move_index: slot out of range");
    if (metric.dim() != n || metric.rank() != 2)
        throw std::invalid_argument("move_index: metric must be a rank-2 tensor of the same dimension");

    const Variance want = direction == MoveDirection::Lower ? Variance::Up : Variance::Down;
    const Variance metric_var = direction == MoveDirection::Lower ? Variance::Down : Variance::Up;
    if (t.variances()[static_cast<size_t>(slot)] != want)
        throw std::invalid_argument("move_index: slot variance does not match direction");
    if (metric.variances()[0] != metric_var || metric.variances()[1] != metric_var)
        throw std::invalid_argument("move_index: metric variance does not match direction");

    double det = 0.0;
    invert_matrix(metric.data(), n, &det);  // throws DegenerateMetricError when singular

    std::vector<Variance> out_var = t.variances();
    out_var[static_cast<size_t>(slot)] = direction == MoveDirection::Lower ? Variance::Down : Variance::Up;
    LabeledTensor out(n, out_var);

    std::vector<int> idx(static_cast<size_t>(r), 0);
    const size_t total = out.data().size();
    for (size_t f = 0; f < total; ++f) {
        size_t rem = f;
        for (int s = r - 1; s >= 0; --s) {
            idx[static_cast<size_t>(s)] = static_cast<int>(rem % static_cast<size_t>(n));
            rem /= static_cast<size_t>(n);
        }
        const int target = idx[static_cast<size_t>(slot)];
        double sum = 0.0;
        for (int a = 0; a < n; ++a) {
            idx[static_cast<size_t>(slot)] = a;
            sum += metric.at({target, a}) * t.at(idx);
        }
        idx[static_cast<size_t>(slot)] = target;
        out.data()[f] = sum;
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(std::span<const double> m, int n) {
    std::vector<double> a(m.begin(), m.end());
    const auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-28) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<size_t>(i)] = A(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

int metric_index(std::span<const double> m, int n, double tol) {
    const double band = tol * std::max(1.0, max_abs(m));
    const std::vector<double> eig = symmetric_eigenvalues(m, n);
    int negatives = 0;
    for (double l : eig) {
        if (std::abs(l) <= band)
            throw DegenerateMetricError("metric_index: eigenvalue inside the zero band");
        if (l < 0.0) ++negatives;
    }
    return negatives;
}

int numeric_rank(std::span<const double> m, int n, double tol) {
    std::vector<double> a(m.begin(), m.end());
    const auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    const double cutoff = tol * std::max(1.0, max_abs(m));
    int rank = 0;
    std::vector<int> rows(static_cast<size_t>(n)), cols(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = cols[static_cast<size_t>(i)] = i;
    for (int step = 0; step < n; ++step) {
        // complete pivoting over the remaining block
        double best = 0.0;
        int bi = step, bj = step;
        for (int i = step; i < n; ++i)
            for (int j = step; j < n; ++j) {
                const double v = std::abs(A(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]));
                if (v > best) { best = v; bi = i; bj = j; }
            }
        if (best <= cutoff) break;
        std::swap(rows[static_cast<size_t>(step)], rows[static_cast<size_t>(bi)]);
        std::swap(cols[static_cast<size_t>(step)], cols[static_cast<size_t>(bj)]);
        const int pr = rows[static_cast<size_t>(step)], pc = cols[static_cast<size_t>(step)];
        const double piv = A(pr, pc);
        for (int i = step + 1; i < n; ++i) {
            const int ri = rows[static_cast<size_t>(i)];
            const double factor = A(ri, pc) / piv;
            for (int j = step; j < n; ++j) {
                const int cj = cols[static_cast<size_t>(j)];
                A(ri, cj) -= factor * A(pr, cj);
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<double> invert_matrix(std::span<const double> m, int n, double* det) {
    std::vector<double> a(m.begin(), m.end());
    std::vector<double> inv(static_cast<size_t>(n) * n, 0.0);
    const auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    const auto B = [&](int i, int j) -> double& { return inv[static_cast<size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) B(i, i) = 1.0;
    double d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(A(i, col)) > std::abs(A(piv, col))) piv = i;
        if (A(piv, col) == 0.0) {
            if (det) *det = 0.0;
            throw DegenerateMetricError("invert_matrix: singular matrix");
        }
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(A(piv, j), A(col, j));
                std::swap(B(piv, j), B(col, j));
            }
            d = -d;
        }
        const double p = A(col, col);
        d *= p;
        for (int j = 0; j < n; ++j) {
            A(col, j) /= p;
            B(col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = A(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                A(i, j) -= f * A(col, j);
                B(i, j) -= f * B(col, j);
            }
        }
    }
    if (det) *det = d;
    return inv;
}

}  // namespace paralab
