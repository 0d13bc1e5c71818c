#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vds {

// Minimal dense row-major matrix; all dimensions here are small.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend Mat operator+(const Mat& x, const Mat& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("Mat: shape mismatch");
        Mat r = x;
        for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols != y.rows) throw std::invalid_argument("Mat: inner dimension mismatch");
        Mat r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                const double v = x(i, k);
                if (v == 0.0) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }
};

}  // namespace vds
