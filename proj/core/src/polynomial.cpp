#include "opamech/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace opamech::poly {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Upper bound on the magnitude of the evaluation error, used as the
// backward-stable residual floor: a point is a numerical root once
// |p(x)| is indistinguishable from rounding noise at x.
double residual_floor(std::span<const Complex> coeffs, Complex x) {
    double bound = 0.0;
    double xk = 1.0;
    const double ax = std::abs(x);
    for (const Complex& c : coeffs) {
        bound += std::abs(c) * xk;
        xk *= ax;
    }
    return bound * kEps * static_cast<double>(coeffs.size());
}

// Variable scale s such that the roots of p(s t) are O(1):
// s = max_k |c_k|^(1/(n-k)) for monic p (Fujiwara-style bound).
double root_scale(std::span<const Complex> coeffs) {
    const std::size_t n = coeffs.size() - 1;
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(coeffs[k]);
        if (a > 0.0) s = std::max(s, std::pow(a, 1.0 / static_cast<double>(n - k)));
    }
    return s;
}

std::vector<Complex> to_complex(std::span<const double> coeffs) {
    return {coeffs.begin(), coeffs.end()};
}

void make_monic(std::vector<Complex>& c) {
    if (c.size() < 2) throw std::invalid_argument("polynomial degree must be >= 1");
    const Complex lead = c.back();
    if (lead == 0.0) throw std::invalid_argument("leading coefficient is zero");
    if (lead != Complex{1.0, 0.0})
        for (Complex& v : c) v /= lead;
}

} // namespace

Complex evaluate(std::span<const Complex> coeffs, Complex x) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

Complex evaluate(std::span<const double> coeffs, Complex x) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

Complex evaluate_derivative(std::span<const Complex> coeffs, Complex x) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * x + coeffs[k] * static_cast<double>(k);
    return acc;
}

std::vector<Complex> durand_kerner(std::vector<Complex> coeffs, int max_iterations) {
    make_monic(coeffs);
    const std::size_t n = coeffs.size() - 1;

    const double s = root_scale(coeffs);
    if (s == 0.0) return std::vector<Complex>(n, Complex{0.0, 0.0});
    std::vector<Complex> c(coeffs.size());
    double sk = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        c[n - k] = coeffs[n - k] / sk;  // c'_{n-k} = c_{n-k} / s^k
        sk *= s;
    }

    // Classic geometric start plus a deterministic random jitter.
    std::mt19937_64 rng(0x6f70616d656368ULL);
    std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
    std::vector<Complex> z(n);
    Complex seed{0.4, 0.9}, pw{1.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        z[j] = pw * (1.0 + Complex{jitter(rng), jitter(rng)});
        pw *= seed;
    }

    for (int it = 0; it < max_iterations; ++it) {
        double max_step = 0.0;
        bool all_at_floor = true;
        for (std::size_t j = 0; j < n; ++j) {
            Complex denom{1.0, 0.0};
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) denom *= z[j] - z[k];
            if (denom == 0.0) {
                z[j] += Complex{jitter(rng), jitter(rng)} + Complex{1e-6, 1e-6};
                all_at_floor = false;
                continue;
            }
            const Complex pj = evaluate(std::span<const Complex>(c), z[j]);
            if (std::abs(pj) > residual_floor(c, z[j])) all_at_floor = false;
            const Complex dz = pj / denom;
            z[j] -= dz;
            max_step = std::max(max_step, std::abs(dz) / (1.0 + std::abs(z[j])));
        }
        if (max_step < 4.0 * kEps || all_at_floor) {
            for (Complex& r : z) r *= s;
            return z;
        }
    }
    throw std::runtime_error("durand_kerner: iteration cap exceeded");
}

std::vector<Complex> durand_kerner(const std::vector<double>& coeffs, int max_iterations) {
    return durand_kerner(to_complex(coeffs), max_iterations);
}

namespace {

struct Givens {
    double c;   // real
    Complex s;
};

// Rotation with [c, s; -conj(s), c] * [f, g]^T = [r, 0]^T.
Givens make_givens(Complex f, Complex g) {
    const double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) return {1.0, Complex{0.0, 0.0}};
    if (af == 0.0) return {0.0, Complex{1.0, 0.0}};
    const double r = std::hypot(af, ag);
    return {af / r, (f / af) * std::conj(g) / r};
}

// Eigenvalues of a complex 2x2 block; returns the one closer to h11 first.
std::pair<Complex, Complex> block_eigs(Complex h00, Complex h01, Complex h10, Complex h11) {
    const Complex tr2 = 0.5 * (h00 + h11);
    const Complex disc = std::sqrt(0.25 * (h00 - h11) * (h00 - h11) + h01 * h10);
    const Complex e1 = tr2 + disc, e2 = tr2 - disc;
    if (std::abs(e1 - h11) <= std::abs(e2 - h11)) return {e1, e2};
    return {e2, e1};
}

// Shifted QR with deflation on a complex upper Hessenberg matrix (small n).
std::vector<Complex> hessenberg_qr(std::vector<std::vector<Complex>> h, int max_iterations) {
    const int n = static_cast<int>(h.size());
    std::vector<Complex> eig(n);
    int hi = n - 1;
    int iters_this_block = 0, total = 0;

    while (hi >= 0) {
        // Flush negligible subdiagonals.
        for (int k = 1; k <= hi; ++k) {
            const double scale = std::abs(h[k - 1][k - 1]) + std::abs(h[k][k]);
            if (std::abs(h[k][k - 1]) <= kEps * (scale > 0.0 ? scale : 1.0))
                h[k][k - 1] = 0.0;
        }
        if (hi == 0 || h[hi][hi - 1] == 0.0) {
            eig[hi] = h[hi][hi];
            --hi;
            iters_this_block = 0;
            continue;
        }
        if (hi == 1 || h[hi - 1][hi - 2] == 0.0) {
            const auto [e1, e2] =
                block_eigs(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
            eig[hi] = e1;
            eig[hi - 1] = e2;
            hi -= 2;
            iters_this_block = 0;
            continue;
        }

        int lo = hi;
        while (lo > 0 && h[lo][lo - 1] != 0.0) --lo;

        if (++total > max_iterations)
            throw std::runtime_error("hessenberg_qr: iteration cap exceeded");

        Complex mu = block_eigs(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]).first;
        if (++iters_this_block % 12 == 0) {
            // Exceptional shift to break rare stagnation cycles.
            mu = h[hi][hi] + Complex{1.5 * std::abs(h[hi][hi - 1]), 0.0};
        }

        // Explicit shifted QR step on the active block: H - mu I = Q R, H <- R Q + mu I.
        std::vector<Givens> rots;
        rots.reserve(hi - lo);
        for (int k = lo; k <= hi; ++k) h[k][k] -= mu;
        for (int k = lo; k < hi; ++k) {
            const Givens g = make_givens(h[k][k], h[k + 1][k]);
            rots.push_back(g);
            for (int j = k; j <= hi; ++j) {
                const Complex a = h[k][j], b = h[k + 1][j];
                h[k][j] = g.c * a + g.s * b;
                h[k + 1][j] = -std::conj(g.s) * a + g.c * b;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const Givens& g = rots[static_cast<std::size_t>(k - lo)];
            const int top = std::min(k + 1, hi);
            for (int i = lo; i <= top; ++i) {
                const Complex a = h[i][k], b = h[i][k + 1];
                h[i][k] = g.c * a + std::conj(g.s) * b;
                h[i][k + 1] = -g.s * a + g.c * b;
            }
        }
        for (int k = lo; k <= hi; ++k) h[k][k] += mu;
    }
    return eig;
}

} // namespace

std::vector<Complex> companion_roots(const std::vector<double>& coeffs_in, int max_iterations) {
    std::vector<Complex> cc = to_complex(coeffs_in);
    make_monic(cc);
    const std::size_t n = cc.size() - 1;

    const double s = root_scale(cc);
    if (s == 0.0) return std::vector<Complex>(n, Complex{0.0, 0.0});
    std::vector<Complex> c(cc.size());
    double sk = 1.0;
    for (std::size_t k = 0; k <= n; ++k) {
        c[n - k] = cc[n - k] / sk;
        sk *= s;
    }

    // Companion matrix with the coefficients in the last column: subdiagonal
    // ones, column n-1 holding -c_0 .. -c_{n-1}; already upper Hessenberg.
    std::vector<std::vector<Complex>> h(n, std::vector<Complex>(n, Complex{0.0, 0.0}));
    for (std::size_t i = 0; i + 1 < n; ++i) h[i + 1][i] = 1.0;
    for (std::size_t i = 0; i < n; ++i) h[i][n - 1] = -c[i];

    std::vector<Complex> roots = hessenberg_qr(std::move(h), max_iterations);
    for (Complex& r : roots) r *= s;
    return roots;
}

double polish_real_root(std::span<const double> coeffs, double x, int steps) {
    std::vector<Complex> cc(coeffs.begin(), coeffs.end());
    for (int i = 0; i < steps; ++i) {
        const Complex p = evaluate(coeffs, Complex{x, 0.0});
        if (std::abs(p) <= residual_floor(cc, Complex{x, 0.0})) break;
        const Complex dp = evaluate_derivative(std::span<const Complex>(cc), Complex{x, 0.0});
        if (dp == 0.0) break;
        const double step = (p / dp).real();
        x -= step;
        if (std::abs(step) <= 2.0 * kEps * (1.0 + std::abs(x))) break;
    }
    return x;
}

} // namespace opamech::poly
