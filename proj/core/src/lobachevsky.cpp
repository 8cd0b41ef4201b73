#include "ktj/lobachevsky.hpp"

#include <cmath>

namespace ktj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// log(sin t / t), smooth and bounded on [0, pi)
double smooth_part(double t) {
    if (std::abs(t) < 1e-8) return -t * t / 6.0; // series head, avoids 0/0
    return std::log(std::sin(t) / t);
}

double simpson(double (*f)(double), double a, double b) {
    double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive(double (*f)(double), double a, double b, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double left = simpson(f, a, m);
    double right = simpson(f, m, b);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, right, 0.5 * tol, depth - 1);
}

} // namespace

double lobachevsky(double theta) {
    // reduce to [0, pi) using period pi and oddness
    double sign = 1.0;
    if (theta < 0) {
        theta = -theta;
        sign = -1.0;
    }
    theta = std::fmod(theta, kPi);
    if (theta == 0.0) return 0.0;
    if (theta > kPi / 2) {
        // L(pi - x) = -L(x)
        return -sign * lobachevsky(kPi - theta);
    }
    // int_0^theta log(2t) dt = theta (log(2 theta) - 1), exactly
    double singular = theta * (std::log(2.0 * theta) - 1.0);
    double rest = adaptive(smooth_part, 0.0, theta, simpson(smooth_part, 0.0, theta),
                           1e-14 * std::max(theta, 0.1), 40);
    return sign * -(singular + rest);
}

double lobachevsky_series(double theta) {
    double sign = 1.0;
    if (theta < 0) {
        theta = -theta;
        sign = -1.0;
    }
    theta = std::fmod(theta, kPi);
    if (theta == 0.0) return 0.0;
    if (theta > kPi / 2) return -sign * lobachevsky_series(kPi - theta);
    double acc = theta - theta * std::log(2.0 * theta);
    double ratio = theta / kPi;
    double power = theta; // theta^{2n+1} / pi^{2n}
    for (int n = 1; n <= 200; ++n) {
        power *= ratio * ratio;
        // zeta(2n) by direct summation; converges fast for n >= 1
        double zeta = 0.0;
        for (int k = 1; k <= 64; ++k) {
            double term = std::pow(static_cast<double>(k), -2.0 * n);
            zeta += term;
            if (term < 1e-18 * zeta) break;
        }
        double term = zeta * power / (n * (2.0 * n + 1.0));
        acc += term;
        if (term < 1e-17 * std::abs(acc)) break;
    }
    return sign * acc;
}

double vol_oct() {
    static const double v = 8.0 * lobachevsky(kPi / 4.0);
    return v;
}

} // namespace ktj
