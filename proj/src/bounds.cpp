#include "tilecache/bounds.hpp"

#include <cmath>

#include "json.hpp"

#include "tilecache/error.hpp"

namespace tilecache {

namespace {

void require_positive(std::int64_t value, const char* name) {
    if (value < 1) throw DomainError(std::string(name) + " must be >= 1, got " + std::to_string(value));
}

// floor(sqrt(x)) for x >= 0, exact for all 64-bit inputs we see here.
std::int64_t isqrt(std::int64_t x) {
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

}  // namespace

TileShape TileShape::with_alpha(std::int64_t alpha) {
    if (alpha < 1) throw DomainError("alpha must be >= 1, got " + std::to_string(alpha));
    return {ShapeKind::Alpha, alpha};
}

std::int64_t TileShape::bk_for(std::int64_t b) const {
    switch (kind) {
        case ShapeKind::Cubic: return b;
        case ShapeKind::Rect: return 1;
        case ShapeKind::Alpha: return alpha;
    }
    return 1;
}

std::string to_string(const TileShape& shape) {
    switch (shape.kind) {
        case ShapeKind::Cubic: return "cubic";
        case ShapeKind::Rect: return "rect";
        case ShapeKind::Alpha: return "alpha=" + std::to_string(shape.alpha);
    }
    return "?";
}

double hong_kung_bound(std::int64_t m, std::int64_t k, std::int64_t n, std::int64_t capacity) {
    require_positive(m, "m");
    require_positive(k, "k");
    require_positive(n, "n");
    require_positive(capacity, "M");
    return 2.0 * static_cast<double>(m) * static_cast<double>(n) * static_cast<double>(k) /
           std::sqrt(static_cast<double>(capacity));
}

double olivry_bound(std::int64_t n, std::int64_t capacity) {
    require_positive(n, "n");
    require_positive(capacity, "M");
    const double nn = static_cast<double>(n);
    const double root = std::sqrt(static_cast<double>(capacity));
    return 2.0 * nn * nn * nn / root - 2.0 * nn * nn / root + 5.0 * nn - static_cast<double>(capacity) - 2.0;
}

bool tiles_fit(std::int64_t b, std::int64_t capacity, const TileShape& shape) {
    switch (shape.kind) {
        case ShapeKind::Cubic: return 3 * b * b <= capacity;
        case ShapeKind::Rect: return b * b + 2 * b <= capacity;
        case ShapeKind::Alpha: return b * b + 2 * shape.alpha * b <= capacity;
    }
    return false;
}

std::int64_t optimal_block(std::int64_t capacity, const TileShape& shape) {
    require_positive(capacity, "M");
    std::int64_t b = 0;
    switch (shape.kind) {
        case ShapeKind::Cubic: b = isqrt(capacity / 3); break;
        case ShapeKind::Rect: b = isqrt(capacity + 1) - 1; break;
        case ShapeKind::Alpha: b = isqrt(shape.alpha * shape.alpha + capacity) - shape.alpha; break;
    }
    if (b < 1)
        throw InfeasibleError("no block size b >= 1 fits " + to_string(shape) + " tiles in M=" +
                              std::to_string(capacity));
    return b;
}

PredictedIo predicted_io(std::int64_t n, std::int64_t capacity, const TileShape& shape) {
    require_positive(n, "n");
    const std::int64_t b = optimal_block(capacity, shape);
    const double nn = static_cast<double>(n);
    const double n2 = nn * nn;
    const double n3 = n2 * nn;
    const double m = static_cast<double>(capacity);

    PredictedIo out;
    out.b = b;
    out.exact = n2 + 2.0 * n3 / static_cast<double>(b);
    switch (shape.kind) {
        case ShapeKind::Cubic: out.asymptotic = 2.0 * std::sqrt(3.0) * n3 / std::sqrt(m) + n2; break;
        case ShapeKind::Rect: out.asymptotic = 2.0 * n3 / std::sqrt(m) + n2; break;
        case ShapeKind::Alpha: {
            const double a = static_cast<double>(shape.alpha);
            out.asymptotic = 2.0 * n3 / (-a + std::sqrt(a * a + m)) + n2;
            break;
        }
    }
    return out;
}

double blocked_io(std::int64_t n, std::int64_t bi, std::int64_t bj) {
    require_positive(n, "n");
    require_positive(bi, "bi");
    require_positive(bj, "bj");
    const double nn = static_cast<double>(n);
    return nn * nn + nn * nn * nn / static_cast<double>(bj) + nn * nn * nn / static_cast<double>(bi);
}

TileShape best_shape(std::int64_t n, std::int64_t capacity) {
    require_positive(n, "n");
    require_positive(capacity, "M");
    return TileShape::rect();
}

BoundsReport make_bounds_report(std::int64_t n, std::int64_t capacity, const TileShape& shape) {
    const PredictedIo io = predicted_io(n, capacity, shape);
    BoundsReport report;
    report.n = n;
    report.capacity = capacity;
    report.shape = shape;
    report.b = io.b;
    report.predicted_io_exact = io.exact;
    report.predicted_io_asymptotic = io.asymptotic;
    report.hong_kung = hong_kung_bound(n, n, n, capacity);
    report.olivry = olivry_bound(n, capacity);
    return report;
}

std::string to_json(const BoundsReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["M"] = r.capacity;
    j["shape"] = to_string(r.shape);
    j["b"] = r.b;
    j["predicted_io_exact"] = r.predicted_io_exact;
    j["predicted_io_asymptotic"] = r.predicted_io_asymptotic;
    j["hong_kung"] = r.hong_kung;
    j["olivry"] = r.olivry;
    return j.dump();
}

}  // namespace tilecache
