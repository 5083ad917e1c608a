#include "rawmamba/tensor.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace rawmamba {

std::string shape_str(const Shape& s) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) os << ", ";
        os << s[i];
    }
    os << "]";
    return os.str();
}

int64_t shape_numel(const Shape& s) {
    int64_t n = 1;
    for (int64_t d : s) {
        if (d <= 0) throw ShapeError("non-positive extent in shape " + shape_str(s));
        n *= d;
    }
    return n;
}

uint64_t Rng::next_u64() {
    // splitmix64
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform01();
    } while (u1 <= 0.0);
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

uint64_t Rng::next_below(uint64_t n) {
    if (n == 0) throw ConfigError("Rng::next_below(0)");
    // modulo bias is irrelevant for our n << 2^64
    return next_u64() % n;
}

uint64_t Rng::derive(uint64_t seed, uint64_t salt) {
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    return r.next_u64();
}

Tensor Tensor::uninit(Shape shape) {
    Tensor t;
    t.size_ = shape_numel(shape);
    t.shape_ = std::move(shape);
    t.data_ = std::make_shared<std::vector<double>>(static_cast<size_t>(t.size_));
    return t;
}

Tensor Tensor::zeros(Shape shape) {
    return uninit(std::move(shape));  // vector zero-initializes
}

Tensor Tensor::full(Shape shape, double value) {
    Tensor t = uninit(std::move(shape));
    std::fill(t.data_->begin(), t.data_->end(), value);
    return t;
}

Tensor Tensor::from(Shape shape, std::vector<double> values) {
    Tensor t;
    t.size_ = shape_numel(shape);
    if (t.size_ != static_cast<int64_t>(values.size()))
        throw ShapeError("Tensor::from: shape " + shape_str(shape) + " needs " +
                         std::to_string(t.size_) + " values, got " + std::to_string(values.size()));
    t.shape_ = std::move(shape);
    t.data_ = std::make_shared<std::vector<double>>(std::move(values));
    return t;
}

Tensor Tensor::scalar(double value) {
    return from({1}, {value});
}

Tensor Tensor::randn(Rng& rng, Shape shape, double stddev) {
    Tensor t = uninit(std::move(shape));
    double* p = t.mutable_data();
    for (int64_t i = 0; i < t.size_; ++i) p[i] = stddev * rng.normal();
    return t;
}

Tensor Tensor::uniform(Rng& rng, Shape shape, double lo, double hi) {
    Tensor t = uninit(std::move(shape));
    double* p = t.mutable_data();
    for (int64_t i = 0; i < t.size_; ++i) p[i] = rng.uniform(lo, hi);
    return t;
}

double* Tensor::mutable_data() {
    if (!data_) throw ContractError("mutable_data on empty tensor");
    if (data_.use_count() != 1)
        throw ContractError("mutable_data on shared tensor (tensors are immutable once shared)");
    return data_->data();
}

int64_t Tensor::offset(std::initializer_list<int64_t> idx) const {
    if (static_cast<int64_t>(idx.size()) != rank())
        throw ShapeError("index rank " + std::to_string(idx.size()) + " vs tensor shape " +
                         shape_str(shape_));
    int64_t off = 0;
    int64_t i = 0;
    for (int64_t v : idx) {
        if (v < 0 || v >= shape_[static_cast<size_t>(i)])
            throw ShapeError("index out of range for shape " + shape_str(shape_));
        off = off * shape_[static_cast<size_t>(i)] + v;
        ++i;
    }
    return off;
}

double Tensor::at(std::initializer_list<int64_t> idx) const {
    return (*data_)[static_cast<size_t>(offset(idx))];
}

bool Tensor::all_finite() const {
    for (double v : *data_)
        if (!std::isfinite(v)) return false;
    return true;
}

bool Tensor::bit_equal(const Tensor& other) const {
    if (shape_ != other.shape_) return false;
    return std::memcmp(data_->data(), other.data_->data(),
                       static_cast<size_t>(size_) * sizeof(double)) == 0;
}

double Tensor::max_abs() const {
    double m = 0.0;
    for (double v : *data_) m = std::max(m, std::fabs(v));
    return m;
}

double Tensor::sum() const {
    double s = 0.0;
    for (double v : *data_) s += v;
    return s;
}

Tensor Tensor::reshaped(Shape new_shape) const {
    if (shape_numel(new_shape) != size_)
        throw ShapeError("reshape " + shape_str(shape_) + " -> " + shape_str(new_shape) +
                         ": element count differs");
    Tensor t;
    t.shape_ = std::move(new_shape);
    t.size_ = size_;
    t.data_ = data_;
    return t;
}

}  // namespace rawmamba
