#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace ars3d {

/// Process-wide default relative tolerance (1e-9 unless overridden, e.g. by
/// the ARS3D_TOL environment variable in the CLI).
double default_tolerance();
void set_default_tolerance(double tol);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// z-component of the planar cross product, i.e. det[u | w].
constexpr double cross(const Vec2& u, const Vec2& w) { return u.x * w.y - u.y * w.x; }

/// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static constexpr Mat2 diag(double p, double q) { return {p, 0.0, 0.0, q}; }

    constexpr Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    constexpr Mat2 operator-() const { return {-a, -b, -c, -d}; }
    constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    constexpr Vec2 operator*(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    constexpr bool operator==(const Mat2&) const = default;

    constexpr double trace() const { return a + d; }
    constexpr double det() const { return a * d - b * c; }
    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse() const;  // throws std::domain_error when singular

    constexpr Vec2 col0() const { return {a, c}; }
    constexpr Vec2 col1() const { return {b, d}; }

    double max_abs() const;
    double frobenius() const { return std::sqrt(a * a + b * b + c * c + d * d); }
};

constexpr Mat2 operator*(double s, const Mat2& m) { return m * s; }

enum class ThetaFamily { Jordan, Diagonal, Rotation };

/// Canonical parameter of the base group: one of the three matrix shapes
/// [[1,1],[0,1]], diag(1, gamma) with gamma in [-1, 1], or [[gamma,-1],[1,gamma]].
struct ThetaForm {
    ThetaFamily family = ThetaFamily::Jordan;
    double gamma = 0.0;

    static ThetaForm jordan() { return {ThetaFamily::Jordan, 0.0}; }
    static ThetaForm diagonal(double gamma);  // throws std::invalid_argument outside [-1, 1]
    static ThetaForm rotation(double gamma);

    bool operator==(const ThetaForm&) const = default;
};

void validate(const ThetaForm& form);
std::string to_string(ThetaFamily family);
ThetaFamily family_from_string(const std::string& name);

Mat2 theta_matrix(const ThetaForm& form);

/// Which closed form a 2x2 matrix function is evaluated with.
enum class SpectralBranch { DistinctReal, ComplexPair, Repeated };

/// Repeated when |tr^2 - 4 det| < 1e-8 (1 + tr^2).
SpectralBranch spectral_branch(const Mat2& A);

/// e^{tA}.
Mat2 expm2(const Mat2& A, double t);

/// The matrix of w -> int_0^t e^{sA} w ds, i.e. t * phi_1(tA). Never inverts A.
Mat2 lambda_op(const Mat2& A, double t);

/// ||AB - BA||_max <= tol (1 + ||A|| ||B||), Frobenius norms on the right.
bool commutes(const Mat2& A, const Mat2& B, double tol);
bool commutes(const Mat2& A, const Mat2& B);

/// Basis of {A : A theta = theta A}, tabulated per family.
std::vector<Mat2> commutant_basis(const ThetaForm& form);

/// Basis of {P : P theta = eps theta P} computed as a numerical null space.
std::vector<Mat2> twisted_commutant_basis(const Mat2& theta, int eps);

}  // namespace ars3d
