#pragma once

#include <cstdint>
#include <vector>

#include "tilecache/error.hpp"
#include "tilecache/trace.hpp"

namespace tilecache {

template <class T>
class Matrix {
public:
    explicit Matrix(std::int32_t n) : n_(n), data_(checked_size(n), T{}) {}
    Matrix(std::int32_t n, std::vector<T> row_major) : n_(n), data_(std::move(row_major)) {
        if (data_.size() != checked_size(n)) throw ShapeError("matrix data does not hold n*n entries");
    }

    static Matrix identity(std::int32_t n) {
        Matrix m(n);
        for (std::int32_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::int32_t n() const { return n_; }
    T& operator()(std::int32_t i, std::int32_t j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(std::int32_t i, std::int32_t j) const {
        return data_[static_cast<std::size_t>(i) * n_ + j];
    }
    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    static std::size_t checked_size(std::int32_t n) {
        if (n < 1) throw ShapeError("matrix dimension must be >= 1");
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    }

    std::int32_t n_;
    std::vector<T> data_;
};

struct NoObserver {
    void operator()(std::int32_t, std::int32_t, std::int32_t) const {}
};

// C = A * B in six-loop blocked order. `observe(ib, jb, kb)` sees every
// innermost iteration before its multiply-add. spec = (1,1,1) is the plain
// triple loop.
template <class T, class Observer = NoObserver>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b, const BlockSpec& spec, Observer&& observe = {}) {
    if (a.n() != b.n()) throw ShapeError("matmul: A and B differ in dimension");
    const std::int32_t n = a.n();
    validate(spec, n);
    Matrix<T> c(n);
    for (std::int32_t i = 0; i < n; i += spec.bi)
        for (std::int32_t j = 0; j < n; j += spec.bj)
            for (std::int32_t k = 0; k < n; k += spec.bk)
                for (std::int32_t ib = i; ib < i + spec.bi && ib < n; ++ib)
                    for (std::int32_t jb = j; jb < j + spec.bj && jb < n; ++jb)
                        for (std::int32_t kb = k; kb < k + spec.bk && kb < n; ++kb) {
                            observe(ib, jb, kb);
                            c(ib, jb) += a(ib, kb) * b(kb, jb);
                        }
    return c;
}

// 2n^3 - n^2: n^3 multiplications plus (n-1) n^2 additions.
std::uint64_t flop_count(std::int64_t n);

// Wall-clock seconds for one blocked double-precision multiply of random
// n x n inputs (fixed seed).
double time_matmul(std::int32_t n, const BlockSpec& spec);

}  // namespace tilecache
