#include "fbsplit/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "fbsplit/rng.hpp"

namespace fbsplit {

Image::Image(std::size_t w, std::size_t h, Vector px)
    : width(w), height(h), pixels(std::move(px)) {
    if (w == 0 || h == 0) throw std::invalid_argument("Image: dimensions must be positive");
    if (pixels.size() != w * h)
        throw std::invalid_argument("Image: pixel count does not match dimensions");
}

Image::Image(std::size_t w, std::size_t h, double fill)
    : width(w), height(h), pixels(w * h, fill) {
    if (w == 0 || h == 0) throw std::invalid_argument("Image: dimensions must be positive");
}

Kernel gaussian_kernel(int size, double sigma) {
    if (size < 1 || size % 2 == 0)
        throw std::invalid_argument("gaussian_kernel: size must be odd and >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be > 0");
    const std::size_t s = static_cast<std::size_t>(size);
    const double c = (size - 1) / 2.0;
    Kernel k{s, std::vector<double>(s * s)};
    double sum = 0.0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            const double di = i - c, dj = j - c;
            const double w = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
            k.weights[i * s + j] = w;
            sum += w;
        }
    for (auto& w : k.weights) w /= sum;
    return k;
}

Kernel motion_kernel(int length, double angle_degrees) {
    if (length < 1) throw std::invalid_argument("motion_kernel: length must be >= 1");
    const double a = angle_degrees * std::numbers::pi / 180.0;
    const double half = (length - 1) / 2.0;
    const long x0 = std::lround(-half * std::cos(a));
    const long y0 = std::lround(-half * std::sin(a));
    const long x1 = std::lround(half * std::cos(a));
    const long y1 = std::lround(half * std::sin(a));

    // Bresenham between the two endpoints, collecting covered cells.
    std::set<std::pair<long, long>> cells;
    long dx = std::labs(x1 - x0), sx = x0 < x1 ? 1 : -1;
    long dy = -std::labs(y1 - y0), sy = y0 < y1 ? 1 : -1;
    long err = dx + dy;
    long x = x0, y = y0;
    while (true) {
        cells.insert({x, y});
        if (x == x1 && y == y1) break;
        const long e2 = 2 * err;
        if (e2 >= dy) { err += dy; x += sx; }
        if (e2 <= dx) { err += dx; y += sy; }
    }

    long extent = 0;
    for (const auto& [cx, cy] : cells)
        extent = std::max({extent, std::labs(cx), std::labs(cy)});
    const std::size_t s = static_cast<std::size_t>(2 * extent + 1);
    Kernel k{s, std::vector<double>(s * s, 0.0)};
    const double w = 1.0 / static_cast<double>(cells.size());
    for (const auto& [cx, cy] : cells)
        k.weights[static_cast<std::size_t>(cy + extent) * s +
                  static_cast<std::size_t>(cx + extent)] = w;
    return k;
}

BlurMap::BlurMap(Kernel kernel, std::size_t width, std::size_t height)
    : kernel_(std::move(kernel)), width_(width), height_(height) {
    if (kernel_.size % 2 == 0 || kernel_.weights.size() != kernel_.size * kernel_.size)
        throw std::invalid_argument("BlurMap: malformed kernel");
    if (kernel_.size > std::min(width_, height_))
        throw std::invalid_argument("BlurMap: kernel larger than image");
}

Vector BlurMap::convolve(const Vector& x, bool adjoint) const {
    if (x.size() != width_ * height_)
        throw std::invalid_argument("BlurMap: dimension mismatch");
    const long s = static_cast<long>(kernel_.size);
    const long ctr = s / 2;
    const long w = static_cast<long>(width_), h = static_cast<long>(height_);
    Vector out(x.size(), 0.0);
    for (long r = 0; r < h; ++r) {
        for (long c = 0; c < w; ++c) {
            double acc = 0.0;
            for (long i = 0; i < s; ++i) {
                for (long j = 0; j < s; ++j) {
                    const long di = i - ctr, dj = j - ctr;
                    const long rr = adjoint ? (r + di) : (r - di);
                    const long cc = adjoint ? (c + dj) : (c - dj);
                    const long pr = ((rr % h) + h) % h;
                    const long pc = ((cc % w) + w) % w;
                    acc += kernel_.weights[i * s + j] * x[pr * w + pc];
                }
            }
            out[r * w + c] = acc;
        }
    }
    return out;
}

Vector BlurMap::apply(const Vector& x) const { return convolve(x, false); }
Vector BlurMap::apply_adjoint(const Vector& y) const { return convolve(y, true); }

std::shared_ptr<const LinearMap> make_blur_map(Kernel kernel, std::size_t width,
                                               std::size_t height) {
    return std::make_shared<BlurMap>(std::move(kernel), width, height);
}

Image add_noise(const Image& img, const NoiseSpec& spec) {
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma))
        throw std::invalid_argument("add_noise: sigma must be finite and >= 0");
    Image out = img;
    if (spec.sigma == 0.0) return out;
    Rng rng(spec.seed);
    for (auto& p : out.pixels) p += spec.sigma * rng.next_gaussian();
    return out;
}

double snr_db(const Vector& reference, const Vector& estimate) {
    require_same_dim(reference, estimate, "snr_db");
    const double ref_norm = norm2(reference);
    if (ref_norm == 0.0) throw std::invalid_argument("snr_db: reference is identically zero");
    const double err_norm = norm2(sub(reference, estimate));
    if (err_norm == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(ref_norm / err_norm);
}

double snr_db(const Image& reference, const Image& estimate) {
    if (reference.width != estimate.width || reference.height != estimate.height)
        throw std::invalid_argument("snr_db: image dimension mismatch");
    return snr_db(reference.pixels, estimate.pixels);
}

}  // namespace fbsplit
