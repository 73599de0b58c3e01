#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace gnet {

// Dense 3-D array, slice-major storage: element (i, j, k) lives at
// ((k * n1) + i) * n2 + j. Axis 1 indexes rows, axis 2 columns and
// axis 3 slices, matching the on-disk cube layout.
template <typename T>
class Tensor3 {
  public:
    Tensor3() = default;
    Tensor3(int n1, int n2, int n3, T fill = T{})
        : n1_(n1), n2_(n2), n3_(n3),
          data_(static_cast<std::size_t>(n1) * n2 * n3, fill) {
        if (n1 < 1 || n2 < 1 || n3 < 1) {
            throw std::invalid_argument("Tensor3: sizes must be positive");
        }
    }

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int n3() const { return n3_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(int i, int j, int k) {
        return data_[(static_cast<std::size_t>(k) * n1_ + i) * n2_ + j];
    }
    const T& operator()(int i, int j, int k) const {
        return data_[(static_cast<std::size_t>(k) * n1_ + i) * n2_ + j];
    }

    std::span<T> slice(int k) {
        return {data_.data() + static_cast<std::size_t>(k) * n1_ * n2_,
                static_cast<std::size_t>(n1_) * n2_};
    }
    std::span<const T> slice(int k) const {
        return {data_.data() + static_cast<std::size_t>(k) * n1_ * n2_,
                static_cast<std::size_t>(n1_) * n2_};
    }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_shape(const Tensor3& o) const {
        return n1_ == o.n1_ && n2_ == o.n2_ && n3_ == o.n3_;
    }

  private:
    int n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<T> data_;
};

// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), values(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * cols, cols};
    }
};

// Compensated (Kahan) accumulator; the long contractions in this project
// are summed with it so component values stay near machine precision.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace gnet
