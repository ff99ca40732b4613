#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fbsplit/linear_map.hpp"
#include "fbsplit/vector_ops.hpp"

namespace fbsplit {

/// Grayscale image, row-major, nominal intensity range [0,1]. Values may
/// leave [0,1] during iteration; clamping happens only when saving.
struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    Vector pixels;

    Image() = default;
    Image(std::size_t w, std::size_t h, Vector px);
    Image(std::size_t w, std::size_t h, double fill = 0.0);

    double& at(std::size_t row, std::size_t col) { return pixels[row * width + col]; }
    double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// Odd square blur kernel, weights sum to 1.
struct Kernel {
    std::size_t size = 1;       // odd
    std::vector<double> weights;  // size*size, row-major

    double at(std::size_t r, std::size_t c) const { return weights[r * size + c]; }
};

Kernel gaussian_kernel(int size, double sigma);

/// Line segment of the given length through the center, rasterized by
/// Bresenham stepping and normalized. Kernel side is the smallest odd size
/// covering the segment.
Kernel motion_kernel(int length, double angle_degrees);

/// Periodic (circular) 2-D convolution with the kernel as a LinearMap on
/// flattened row-major images; the adjoint is correlation with the same
/// kernel. Periodic boundary keeps |A| <= 1 for normalized kernels.
class BlurMap final : public LinearMap {
public:
    BlurMap(Kernel kernel, std::size_t width, std::size_t height);

    std::size_t dim_in() const override { return width_ * height_; }
    std::size_t dim_out() const override { return width_ * height_; }
    Vector apply(const Vector& x) const override;
    Vector apply_adjoint(const Vector& y) const override;

    const Kernel& kernel() const { return kernel_; }

private:
    Vector convolve(const Vector& x, bool adjoint) const;

    Kernel kernel_;
    std::size_t width_, height_;
};

std::shared_ptr<const LinearMap> make_blur_map(Kernel kernel, std::size_t width,
                                               std::size_t height);

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Additive white Gaussian noise, row-major draw order, no clamping.
Image add_noise(const Image& img, const NoiseSpec& spec);

/// 20 log10(|x| / |x - estimate|); +inf when the estimate is exact.
double snr_db(const Image& reference, const Image& estimate);
double snr_db(const Vector& reference, const Vector& estimate);

}  // namespace fbsplit
