#include "ars3d/linalg2.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <complex>
#include <stdexcept>

namespace ars3d {

namespace {

std::atomic<double> g_tolerance{1e-9};

// Even/odd parts of the exponential of a traceless matrix N with N^2 = z I:
// e^N = C(z) I + S(z) N, C = cosh(sqrt z), S = sinh(sqrt z) / sqrt z.
struct EvenOdd {
    double c;
    double s;
};

EvenOdd even_odd_series(double z) {
    // Six terms of each series.
    double c = 0.0, s = 0.0, term = 1.0;
    for (int k = 0; k < 6; ++k) {
        // term = z^k / (2k)!
        c += term;
        s += term / (2.0 * k + 1.0);
        term *= z / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    }
    return {c, s};
}

EvenOdd even_odd(double z) {
    if (std::abs(z) < 1e-3) return even_odd_series(z);
    if (z > 0.0) {
        const double r = std::sqrt(z);
        return {std::cosh(r), std::sinh(r) / r};
    }
    const double r = std::sqrt(-z);
    return {std::cos(r), std::sin(r) / r};
}

// tau = tr/2, N = A - tau I, N^2 = delta I.
struct Split {
    double tau;
    double delta;
    Mat2 N;
};

Split split(const Mat2& A) {
    const double tau = 0.5 * A.trace();
    const double h = 0.5 * (A.a - A.d);
    return {tau, h * h + A.b * A.c, Mat2{h, A.b, A.c, -h}};
}

double phi1(double x) { return x == 0.0 ? 1.0 : std::expm1(x) / x; }

std::complex<double> phi1(std::complex<double> w) {
    if (std::abs(w) < 0.5) {
        std::complex<double> sum = 0.0, term = 1.0;
        for (int n = 0; n < 25; ++n) {
            sum += term;
            term *= w / static_cast<double>(n + 2);
        }
        return sum;
    }
    return (std::exp(w) - 1.0) / w;
}

// K_j(x) = int_0^1 u^j e^{ux} du for j = 0..jmax.
std::vector<double> moment_integrals(double x, int jmax) {
    std::vector<double> k(static_cast<std::size_t>(jmax) + 1);
    if (std::abs(x) <= 2.0) {
        for (int j = 0; j <= jmax; ++j) {
            double sum = 0.0, pw = 1.0;  // x^n / n!
            for (int n = 0; n < 60; ++n) {
                const double term = pw / (n + j + 1);
                sum += term;
                if (std::abs(term) < 1e-18 * std::abs(sum)) break;
                pw *= x / (n + 1);
            }
            k[static_cast<std::size_t>(j)] = sum;
        }
        return k;
    }
    const double ex = std::exp(x);
    k[0] = std::expm1(x) / x;
    for (int j = 1; j <= jmax; ++j) {
        k[static_cast<std::size_t>(j)] = (ex - j * k[static_cast<std::size_t>(j) - 1]) / x;
    }
    return k;
}

}  // namespace

double default_tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_default_tolerance(double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tolerance must be positive and finite");
    g_tolerance.store(tol, std::memory_order_relaxed);
}

Mat2 Mat2::inverse() const {
    const double dt = det();
    if (dt == 0.0 || !std::isfinite(dt)) throw std::domain_error("singular 2x2 matrix");
    return Mat2{d, -b, -c, a} * (1.0 / dt);
}

double Mat2::max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }

ThetaForm ThetaForm::diagonal(double gamma) {
    ThetaForm f{ThetaFamily::Diagonal, gamma};
    validate(f);
    return f;
}

ThetaForm ThetaForm::rotation(double gamma) {
    ThetaForm f{ThetaFamily::Rotation, gamma};
    validate(f);
    return f;
}

void validate(const ThetaForm& form) {
    if (!std::isfinite(form.gamma)) throw std::invalid_argument("theta parameter must be finite");
    if (form.family == ThetaFamily::Diagonal && (form.gamma < -1.0 || form.gamma > 1.0)) {
        throw std::invalid_argument("diagonal theta requires gamma in [-1, 1]");
    }
}

std::string to_string(ThetaFamily family) {
    switch (family) {
        case ThetaFamily::Jordan: return "jordan";
        case ThetaFamily::Diagonal: return "diagonal";
        case ThetaFamily::Rotation: return "rotation";
    }
    return "unknown";
}

ThetaFamily family_from_string(const std::string& name) {
    if (name == "jordan") return ThetaFamily::Jordan;
    if (name == "diagonal") return ThetaFamily::Diagonal;
    if (name == "rotation") return ThetaFamily::Rotation;
    throw std::invalid_argument("unknown theta family '" + name + "'");
}

Mat2 theta_matrix(const ThetaForm& form) {
    validate(form);
    switch (form.family) {
        case ThetaFamily::Jordan: return {1.0, 1.0, 0.0, 1.0};
        case ThetaFamily::Diagonal: return Mat2::diag(1.0, form.gamma);
        case ThetaFamily::Rotation: return {form.gamma, -1.0, 1.0, form.gamma};
    }
    throw std::logic_error("unreachable theta family");
}

SpectralBranch spectral_branch(const Mat2& A) {
    const double tr = A.trace();
    const double disc = 4.0 * split(A).delta;  // tr^2 - 4 det without the cancellation
    if (std::abs(disc) < 1e-8 * (1.0 + tr * tr)) return SpectralBranch::Repeated;
    return disc > 0.0 ? SpectralBranch::DistinctReal : SpectralBranch::ComplexPair;
}

Mat2 expm2(const Mat2& A, double t) {
    const Split sp = split(A);
    const double z = t * t * sp.delta;
    const EvenOdd eo = spectral_branch(A) == SpectralBranch::Repeated && std::abs(z) < 1e-2
                           ? even_odd_series(z)
                           : even_odd(z);
    const double scale = std::exp(t * sp.tau);
    return (Mat2::identity() * eo.c + sp.N * (t * eo.s)) * scale;
}

Mat2 lambda_op(const Mat2& A, double t) {
    if (t == 0.0) return Mat2::zero();
    const Split sp = split(A);
    const double z = t * t * sp.delta;
    const SpectralBranch branch = spectral_branch(A);

    // Lambda = m I + d N with m = int e^{s tau} C(s^2 delta), d = int s e^{s tau} S(s^2 delta).
    double m = 0.0, d = 0.0;
    if (std::abs(z) < 1e-8 || (branch == SpectralBranch::Repeated && std::abs(z) < 1e-2)) {
        // J_j = int_0^t s^j e^{s tau} ds = t^{j+1} K_j(t tau); six terms of each series.
        const std::vector<double> k = moment_integrals(t * sp.tau, 11);
        double tpow = t, dpow = 1.0, fact = 1.0;  // t^{j+1}, delta^{j/2}, j!
        for (int j = 0; j <= 11; ++j) {
            const double term = dpow * tpow * k[static_cast<std::size_t>(j)] / fact;
            if (j % 2 == 0) {
                m += term;
            } else {
                d += term;
                dpow *= sp.delta;
            }
            tpow *= t;
            fact *= (j + 1);
        }
    } else if (sp.delta > 0.0) {
        const double mu = std::sqrt(sp.delta);
        const double gp = t * phi1(t * (sp.tau + mu));
        const double gm = t * phi1(t * (sp.tau - mu));
        m = 0.5 * (gp + gm);
        d = (gp - gm) / (2.0 * mu);
    } else {
        const double omega = std::sqrt(-sp.delta);
        const std::complex<double> g = t * phi1(std::complex<double>(t * sp.tau, t * omega));
        m = g.real();
        d = g.imag() / omega;
    }
    return Mat2::identity() * m + sp.N * d;
}

bool commutes(const Mat2& A, const Mat2& B, double tol) {
    const Mat2 comm = A * B - B * A;
    return comm.max_abs() <= tol * (1.0 + A.frobenius() * B.frobenius());
}

bool commutes(const Mat2& A, const Mat2& B) { return commutes(A, B, default_tolerance()); }

std::vector<Mat2> commutant_basis(const ThetaForm& form) {
    validate(form);
    switch (form.family) {
        case ThetaFamily::Jordan:
            return {Mat2::identity(), Mat2{0.0, 1.0, 0.0, 0.0}};
        case ThetaFamily::Diagonal:
            if (form.gamma == 1.0) {
                return {Mat2{1, 0, 0, 0}, Mat2{0, 1, 0, 0}, Mat2{0, 0, 1, 0}, Mat2{0, 0, 0, 1}};
            }
            return {Mat2::diag(1.0, 0.0), Mat2::diag(0.0, 1.0)};
        case ThetaFamily::Rotation:
            return {Mat2::identity(), Mat2{0.0, -1.0, 1.0, 0.0}};
    }
    throw std::logic_error("unreachable theta family");
}

std::vector<Mat2> twisted_commutant_basis(const Mat2& theta, int eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    // Row-major vec(P) = (p11, p12, p21, p22); rows are the entries of P theta - eps theta P.
    Eigen::Matrix4d K = Eigen::Matrix4d::Zero();
    const double th[2][2] = {{theta.a, theta.b}, {theta.c, theta.d}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const int row = 2 * i + j;
            for (int k = 0; k < 2; ++k) {
                K(row, 2 * i + k) += th[k][j];         // (P theta)_ij = sum_k P_ik theta_kj
                K(row, 2 * k + j) -= eps * th[i][k];   // (theta P)_ij = sum_k theta_ik P_kj
            }
        }
    }
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(K, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * std::max(1.0, sv(0));
    std::vector<Mat2> basis;
    for (int k = 0; k < 4; ++k) {
        if (sv(k) > cutoff) continue;
        Eigen::Vector4d v = svd.matrixV().col(k);
        for (int i = 0; i < 4; ++i) {
            if (std::abs(v(i)) < 1e-14) v(i) = 0.0;
        }
        basis.push_back(Mat2{v(0), v(1), v(2), v(3)});
    }
    return basis;
}

}  // namespace ars3d
