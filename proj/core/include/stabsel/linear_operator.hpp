#pragma once

#include <atomic>
#include <cstddef>

#include "stabsel/sparse.hpp"
#include "stabsel/types.hpp"

namespace stabsel {

/// Thread-safe call tally. Copies snapshot the current value so that objects
/// holding one stay copyable and movable.
class CallCounter {
 public:
  CallCounter() = default;
  CallCounter(const CallCounter& other) : n_(other.value()) {}
  CallCounter& operator=(const CallCounter& other) {
    n_.store(other.value(), std::memory_order_relaxed);
    return *this;
  }

  void increment() const noexcept { n_.fetch_add(1, std::memory_order_relaxed); }
  std::size_t value() const noexcept { return n_.load(std::memory_order_relaxed); }
  void reset() const noexcept { n_.store(0, std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::size_t> n_{0};
};

/// Square matrix available only through products y = A x.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index dim() const = 0;

  void apply(const Vector& x, Vector& y) const {
    require_same_dim(dim(), x.size(), "LinearOperator::apply");
    calls_.increment();
    do_apply(x, y);
  }

  Vector apply(const Vector& x) const {
    Vector y(dim());
    apply(x, y);
    return y;
  }

  std::size_t apply_count() const noexcept { return calls_.value(); }
  void reset_apply_count() const noexcept { calls_.reset(); }

 protected:
  virtual void do_apply(const Vector& x, Vector& y) const = 0;

 private:
  CallCounter calls_;
};

/// Non-owning view of a CSR matrix; the matrix must outlive the operator.
class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(const SparseMatrixCSR& a) : a_(&a) {}

  Index dim() const override { return a_->dim(); }
  const SparseMatrixCSR& matrix() const noexcept { return *a_; }

 protected:
  void do_apply(const Vector& x, Vector& y) const override { a_->multiply(x, y); }

 private:
  const SparseMatrixCSR* a_;
};

/// (K + shift I) for a dense symmetric K held by reference.
class DenseShiftedOperator final : public LinearOperator {
 public:
  DenseShiftedOperator(const Matrix& k, double shift) : k_(&k), shift_(shift) {
    if (k.rows() != k.cols()) throw DimensionError("DenseShiftedOperator: matrix is not square");
  }

  Index dim() const override { return k_->rows(); }
  double shift() const noexcept { return shift_; }

 protected:
  void do_apply(const Vector& x, Vector& y) const override {
    y.noalias() = k_->selfadjointView<Eigen::Lower>() * x;
    y += shift_ * x;
  }

 private:
  const Matrix* k_;
  double shift_;
};

}  // namespace stabsel
