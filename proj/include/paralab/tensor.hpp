#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paralab {

class DegenerateMetricError : public std::runtime_error {
public:
    explicit DegenerateMetricError(const std::string& what) : std::runtime_error(what) {}
};

enum class Variance { Up, Down };

// Dense multi-index array over one fixed dimension, with a variance label per
// slot.  Indices are row-major with the first slot slowest.
class LabeledTensor {
public:
    LabeledTensor(int dim, std::vector<Variance> variances)
        : dim_(dim), variances_(std::move(variances)) {
        if (dim < 1) throw std::invalid_argument("LabeledTensor: dimension must be positive");
        size_t total = 1;
        for (size_t r = 0; r < variances_.size(); ++r) total *= static_cast<size_t>(dim);
        data_.assign(total, 0.0);
    }

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(variances_.size()); }
    const std::vector<Variance>& variances() const { return variances_; }
    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    size_t flat_index(std::span<const int> idx) const {
        if (static_cast<int>(idx.size()) != rank())
            throw std::invalid_argument("LabeledTensor: wrong number of indices");
        size_t f = 0;
        for (int v : idx) {
            if (v < 0 || v >= dim_) throw std::invalid_argument("LabeledTensor: index out of range");
            f = f * static_cast<size_t>(dim_) + static_cast<size_t>(v);
        }
        return f;
    }

    double at(std::span<const int> idx) const { return data_[flat_index(idx)]; }
    double& at(std::span<const int> idx) { return data_[flat_index(idx)]; }

    double at(std::initializer_list<int> idx) const {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }
    double& at(std::initializer_list<int> idx) {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }

    double max_abs() const;

private:
    int dim_;
    std::vector<Variance> variances_;
    std::vector<double> data_;
};

// Trace over one contravariant and one covariant slot.
LabeledTensor contract(const LabeledTensor& t, int up_slot, int down_slot);

// Raises or lowers one slot with the supplied metric: pass the (0,2) metric
// to lower an Up slot, its (2,0) inverse to raise a Down slot.
enum class MoveDirection { Raise, Lower };
LabeledTensor move_index(const LabeledTensor& t, int slot, const LabeledTensor& metric,
                         MoveDirection direction);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations; ascending.
std::vector<double> symmetric_eigenvalues(std::span<const double> m, int n);

// Count of negative eigenvalues.  Throws DegenerateMetricError when an
// eigenvalue sits inside the zero band tol * max(1, max_abs).
int metric_index(std::span<const double> m, int n, double tol = 1e-9);

// Rank by complete-pivoting elimination; pivots below tol * max(1, max_abs)
// count as zero.
int numeric_rank(std::span<const double> m, int n, double tol = 1e-9);

// Gaussian elimination with partial pivoting.  det receives the signed
// determinant; throws DegenerateMetricError if a pivot vanishes.
std::vector<double> invert_matrix(std::span<const double> m, int n, double* det = nullptr);

double max_abs(std::span<const double> v);

}  // namespace paralab
