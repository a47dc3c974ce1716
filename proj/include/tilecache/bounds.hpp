#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace tilecache {

enum class ShapeKind : std::uint8_t {
    Cubic,  // bi = bj = bk = b
    Rect,   // bi = bj = b, bk = 1
    Alpha,  // bi = bj = b, bk = alpha
};

struct TileShape {
    ShapeKind kind = ShapeKind::Rect;
    std::int64_t alpha = 1;  // meaningful for Alpha only

    static TileShape cubic() { return {ShapeKind::Cubic, 1}; }
    static TileShape rect() { return {ShapeKind::Rect, 1}; }
    static TileShape with_alpha(std::int64_t alpha);

    // Value of bk the shape implies for a tile width b.
    std::int64_t bk_for(std::int64_t b) const;

    friend bool operator==(const TileShape&, const TileShape&) = default;
};

std::string to_string(const TileShape& shape);  // "cubic", "rect", "alpha=<a>"

// 2mnk / sqrt(M).
double hong_kung_bound(std::int64_t m, std::int64_t k, std::int64_t n, std::int64_t capacity);

// 2n^3/sqrt(M) - 2n^2/sqrt(M) + 5n - M - 2 for three n x n matrices.
double olivry_bound(std::int64_t n, std::int64_t capacity);

// Largest integer b whose three tiles fit in M:
//   cubic: 3b^2 <= M          (= floor(sqrt(M/3)))
//   rect:  b^2 + 2b <= M      (= floor(sqrt(M+1)) - 1)
//   alpha: b^2 + 2ab <= M     (= floor(-a + sqrt(a^2 + M)))
// Throws InfeasibleError when not even b = 1 fits.
std::int64_t optimal_block(std::int64_t capacity, const TileShape& shape);

// Whether a tile of width b satisfies the shape's capacity constraint.
bool tiles_fit(std::int64_t b, std::int64_t capacity, const TileShape& shape);

struct PredictedIo {
    std::int64_t b = 0;
    double exact = 0.0;       // n^2 + 2n^3 / b with the integer b
    double asymptotic = 0.0;  // closed form with the real-valued optimum
};

PredictedIo predicted_io(std::int64_t n, std::int64_t capacity, const TileShape& shape);

// Explicit-control I/O of a (bi, bj, bk) blocking that tiles n exactly:
// C once (n^2), A once per j block (n^3 / bj), B once per i block (n^3 / bi).
// Reduces to n^2 + 2n^3/b when bi = bj = b.
double blocked_io(std::int64_t n, std::int64_t bi, std::int64_t bj);

// The shape with the least predicted I/O, which is always (b, b, 1).
TileShape best_shape(std::int64_t n, std::int64_t capacity);

struct BoundsReport {
    std::int64_t n = 0;
    std::int64_t capacity = 0;
    TileShape shape;
    std::int64_t b = 0;
    double predicted_io_exact = 0.0;
    double predicted_io_asymptotic = 0.0;
    double hong_kung = 0.0;
    double olivry = 0.0;
};

BoundsReport make_bounds_report(std::int64_t n, std::int64_t capacity, const TileShape& shape);

// {"n","M","shape","b","predicted_io_exact","predicted_io_asymptotic","hong_kung","olivry"}
std::string to_json(const BoundsReport& report);

}  // namespace tilecache
