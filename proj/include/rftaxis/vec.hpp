#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace rftaxis {

// Small fixed-capacity position/vector type. Dimension p in {1,2,3} is set
// per scenario; unused components stay zero so arithmetic never branches on p.
class Vec {
public:
    Vec() : n_(0), c_{0.0, 0.0, 0.0} {}
    explicit Vec(int dim) : n_(dim), c_{0.0, 0.0, 0.0} {}
    Vec(std::initializer_list<double> xs) : n_(0), c_{0.0, 0.0, 0.0} {
        for (double x : xs) c_[n_++] = x;
    }
    static Vec from(const std::vector<double>& xs) {
        Vec v(static_cast<int>(xs.size()));
        for (int i = 0; i < v.n_; ++i) v.c_[i] = xs[i];
        return v;
    }

    int dim() const { return n_; }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }

    Vec operator+(const Vec& o) const {
        Vec r(n_);
        for (int i = 0; i < n_; ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r(n_);
        for (int i = 0; i < n_; ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    Vec operator*(double s) const {
        Vec r(n_);
        for (int i = 0; i < n_; ++i) r.c_[i] = c_[i] * s;
        return r;
    }
    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
        return *this;
    }

    double dot(const Vec& o) const {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) s += c_[i] * o.c_[i];
        return s;
    }
    double norm() const { return std::sqrt(dot(*this)); }

    bool finite() const {
        for (int i = 0; i < n_; ++i)
            if (!std::isfinite(c_[i])) return false;
        return true;
    }

    static Vec axis(int dim, int i, double scale = 1.0) {
        Vec v(dim);
        v.c_[i] = scale;
        return v;
    }

    std::vector<double> to_vector() const {
        return std::vector<double>(c_.begin(), c_.begin() + n_);
    }

    bool operator==(const Vec& o) const {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }

private:
    int n_;
    std::array<double, 3> c_;
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

} // namespace rftaxis
