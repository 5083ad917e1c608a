#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "rawmamba/errors.hpp"

namespace rawmamba {

using Shape = std::vector<int64_t>;

std::string shape_str(const Shape& s);

/// Deterministic RNG: splitmix64 state with an own Box-Muller normal so that
/// streams are identical on every platform for a given seed.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64();
    /// Uniform in [0,1) with 53 bits of mantissa.
    double uniform01();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller (caches the spare value).
    double normal();
    /// Uniform integer in [0, n).
    uint64_t next_below(uint64_t n);

    /// Derive an independent child stream (used for per-scene seeds).
    static uint64_t derive(uint64_t seed, uint64_t salt);

  private:
    uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Dense row-major tensor of doubles. Values are immutable once shared:
/// mutable_data() is only legal while this tensor uniquely owns its storage.
class Tensor {
  public:
    Tensor() = default;

    static Tensor zeros(Shape shape);
    static Tensor full(Shape shape, double value);
    static Tensor from(Shape shape, std::vector<double> values);
    static Tensor scalar(double value);
    /// Uninitialized storage; caller must fill every element before sharing.
    static Tensor uninit(Shape shape);
    static Tensor randn(Rng& rng, Shape shape, double stddev = 1.0);
    static Tensor uniform(Rng& rng, Shape shape, double lo, double hi);

    bool defined() const { return data_ != nullptr; }
    const Shape& shape() const { return shape_; }
    int64_t rank() const { return static_cast<int64_t>(shape_.size()); }
    int64_t dim(int64_t i) const { return shape_.at(static_cast<size_t>(i)); }
    int64_t size() const { return size_; }

    const double* data() const { return data_->data(); }
    double* mutable_data();

    double operator[](int64_t i) const { return (*data_)[static_cast<size_t>(i)]; }
    double at(std::initializer_list<int64_t> idx) const;
    int64_t offset(std::initializer_list<int64_t> idx) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool all_finite() const;
    /// Bitwise equality of shape and payload.
    bool bit_equal(const Tensor& other) const;

    double max_abs() const;
    double sum() const;

    /// Row-major zero-copy reshape; product of extents must match.
    Tensor reshaped(Shape new_shape) const;

  private:
    Shape shape_;
    int64_t size_ = 0;
    std::shared_ptr<std::vector<double>> data_;
};

int64_t shape_numel(const Shape& s);

}  // namespace rawmamba
