#include "tritospec/numeric.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <random>

namespace tritospec::numeric {

namespace {

constexpr double kDeflate = 1e-14;

// In-place Householder step: reflect column j of R (rows j..m-1) onto e_1 and
// accumulate the reflector into Q from the right.
void householder_step(Matrix& R, Matrix& Q, Index j) {
    const Index m = R.rows();
    const Index len = m - j;
    Vector x = R.block(j, j, len, 1);
    const double normx = x.norm();
    if (normx == 0.0) return;
    const Complex alpha = x(0);
    const Complex phase = alpha == Complex(0) ? Complex(1) : alpha / std::abs(alpha);
    Vector v = x;
    v(0) += phase * normx;
    const double vsq = v.squaredNorm();
    if (vsq == 0.0) return;
    const double beta = 2.0 / vsq;
    R.block(j, j, len, R.cols() - j) -=
        (beta * v) * (v.adjoint() * R.block(j, j, len, R.cols() - j));
    Q.rightCols(len) -= (Q.rightCols(len) * v) * (beta * v).adjoint();
}

// Make the R diagonal real and nonnegative; QR is unchanged.
void normalize_phases(Matrix& Q, Matrix& R) {
    const Index k = std::min(R.rows(), R.cols());
    for (Index j = 0; j < k; ++j) {
        const Complex d = R(j, j);
        if (d == Complex(0) || (d.imag() == 0.0 && d.real() >= 0.0)) continue;
        const Complex ph = d / std::abs(d);
        R.row(j) *= std::conj(ph);
        Q.col(j) *= ph;
    }
}

struct Givens {
    Complex c, s;
};

Givens make_givens(Complex a, Complex b) {
    if (b == Complex(0)) return {Complex(1), Complex(0)};
    const double r = std::hypot(std::abs(a), std::abs(b));
    return {a / r, b / r};
}

struct FlooredLU {
    Matrix F;              // unit lower / upper factors packed
    Eigen::VectorXi piv;

    Vector solve(const Vector& b) const {
        const Index n = F.rows();
        Vector y = b;
        for (Index k = 0; k < n; ++k) std::swap(y(k), y(piv(k)));
        for (Index k = 0; k < n; ++k)
            for (Index i = k + 1; i < n; ++i) y(i) -= F(i, k) * y(k);
        for (Index k = n - 1; k >= 0; --k) {
            for (Index j = k + 1; j < n; ++j) y(k) -= F(k, j) * y(j);
            y(k) /= F(k, k);
        }
        return y;
    }
};

// Partial-pivot LU where vanishing pivots are floored instead of failing:
// the shifted solves in inverse iteration are allowed to be singular.
FlooredLU floored_lu(Matrix A, double floor_value) {
    const Index n = A.rows();
    FlooredLU lu;
    lu.piv.resize(n);
    for (Index k = 0; k < n; ++k) {
        Index p = k;
        double best = std::abs(A(k, k));
        for (Index i = k + 1; i < n; ++i) {
            const double v = std::abs(A(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        lu.piv(k) = static_cast<int>(p);
        if (p != k) A.row(k).swap(A.row(p));
        if (std::abs(A(k, k)) < floor_value) {
            A(k, k) = A(k, k) == Complex(0)
                          ? Complex(floor_value)
                          : A(k, k) / std::abs(A(k, k)) * floor_value;
        }
        for (Index i = k + 1; i < n; ++i) {
            A(i, k) /= A(k, k);
            A.row(i).tail(n - k - 1) -= A(i, k) * A.row(k).tail(n - k - 1);
        }
    }
    lu.F = std::move(A);
    return lu;
}

class Wilkinson {
public:
    static Complex shift(const Matrix& H, Index hi) {
        const Complex a = H(hi - 1, hi - 1), b = H(hi - 1, hi);
        const Complex c = H(hi, hi - 1), d = H(hi, hi);
        const Complex tr2 = (a + d) / 2.0;
        const Complex disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
        const Complex mu1 = tr2 + disc, mu2 = tr2 - disc;
        return std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    }
};

}  // namespace

QR householder_qr(const Matrix& M) {
    const Index m = M.rows(), k = M.cols();
    if (m < k) throw LengthMismatch("householder_qr expects rows >= cols");
    Matrix R = M;
    Matrix Q = Matrix::Identity(m, m);
    for (Index j = 0; j < k; ++j) {
        // Rebind the trailing block so the reflector update spans all columns.
        const Index len = m - j;
        Vector x = R.block(j, j, len, 1);
        const double normx = x.norm();
        if (normx == 0.0) continue;
        const Complex alpha = x(0);
        const Complex phase =
            alpha == Complex(0) ? Complex(1) : alpha / std::abs(alpha);
        Vector v = x;
        v(0) += phase * normx;
        const double beta = 2.0 / v.squaredNorm();
        R.bottomRightCorner(len, k - j) -=
            (beta * v) * (v.adjoint() * R.bottomRightCorner(len, k - j));
        Q.rightCols(len) -= (Q.rightCols(len) * v) * (beta * v).adjoint();
    }
    normalize_phases(Q, R);
    Matrix Rk = R.topRows(k);
    for (Index j = 0; j < k; ++j)
        for (Index i = j + 1; i < k; ++i) Rk(i, j) = Complex(0);
    return {Q.leftCols(k), Rk};
}

PivotedQR householder_qr_pivoted(const Matrix& M, double rank_tol) {
    const Index m = M.rows(), k = M.cols();
    PivotedQR out;
    out.R = M;
    out.Q = Matrix::Identity(m, m);
    out.perm.resize(k);
    for (Index j = 0; j < k; ++j) out.perm(j) = static_cast<int>(j);
    const Index steps = std::min(m, k);
    for (Index j = 0; j < steps; ++j) {
        Index p = j;
        double best = out.R.col(j).tail(m - j).squaredNorm();
        for (Index l = j + 1; l < k; ++l) {
            const double v = out.R.col(l).tail(m - j).squaredNorm();
            if (v > best) {
                best = v;
                p = l;
            }
        }
        if (p != j) {
            out.R.col(j).swap(out.R.col(p));
            std::swap(out.perm(j), out.perm(p));
        }
        householder_step(out.R, out.Q, j);
        for (Index i = j + 1; i < m; ++i) out.R(i, j) = Complex(0);
    }
    normalize_phases(out.Q, out.R);
    out.rank = 0;
    const double head = std::abs(out.R(0, 0));
    for (Index j = 0; j < steps; ++j)
        if (std::abs(out.R(j, j)) > rank_tol * head) ++out.rank;
    return out;
}

HessenbergForm hessenberg(const Matrix& M) {
    if (M.rows() != M.cols())
        throw LengthMismatch("hessenberg expects a square matrix");
    const Index n = M.rows();
    Matrix H = M;
    Matrix U = Matrix::Identity(n, n);
    for (Index j = 0; j + 2 < n; ++j) {
        const Index len = n - j - 1;
        if (H.col(j).tail(len - 1).norm() == 0.0) continue;  // already reduced
        Vector x = H.block(j + 1, j, len, 1);
        const double normx = x.norm();
        if (normx == 0.0) continue;
        const Complex alpha = x(0);
        const Complex phase =
            alpha == Complex(0) ? Complex(1) : alpha / std::abs(alpha);
        Vector v = x;
        v(0) += phase * normx;
        const double beta = 2.0 / v.squaredNorm();
        H.block(j + 1, 0, len, n) -=
            (beta * v) * (v.adjoint() * H.block(j + 1, 0, len, n));
        H.block(0, j + 1, n, len) -=
            (H.block(0, j + 1, n, len) * v) * (beta * v).adjoint();
        U.block(0, j + 1, n, len) -=
            (U.block(0, j + 1, n, len) * v) * (beta * v).adjoint();
        H.block(j + 2, j, len - 1, 1).setZero();
    }
    return {H, U};
}

Vector qr_eigenvalues(const Matrix& M) {
    if (M.rows() != M.cols())
        throw LengthMismatch("qr_eigenvalues expects a square matrix");
    const Index n = M.rows();
    Vector vals(n);
    if (n == 0) return vals;
    if (n == 1) {
        vals(0) = M(0, 0);
        return vals;
    }
    Matrix H = hessenberg(M).H;

    auto negligible = [&](Index k) {
        return std::abs(H(k, k - 1)) <=
               kDeflate * (std::abs(H(k - 1, k - 1)) + std::abs(H(k, k)));
    };

    const long max_iters = 100 * static_cast<long>(n);
    Index hi = n - 1;
    long iters_current = 0;
    while (hi > 0) {
        if (negligible(hi)) {
            H(hi, hi - 1) = Complex(0);
            vals(hi) = H(hi, hi);
            --hi;
            iters_current = 0;
            continue;
        }
        Index lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) H(lo, lo - 1) = Complex(0);

        ++iters_current;
        if (iters_current > max_iters)
            throw NonConvergence("QR iteration exceeded 100*n steps for one eigenvalue");
        Complex mu = Wilkinson::shift(H, hi);
        if (iters_current % 20 == 0)  // exceptional shift on stall
            mu = H(hi, hi) + Complex(0.75, 0.4375) * std::abs(H(hi, hi - 1));

        for (Index i = lo; i <= hi; ++i) H(i, i) -= mu;
        std::vector<Givens> rots(static_cast<size_t>(hi - lo));
        for (Index k = lo; k < hi; ++k) {
            const Givens g = make_givens(H(k, k), H(k + 1, k));
            rots[static_cast<size_t>(k - lo)] = g;
            for (Index j = k; j < n; ++j) {
                const Complex x = H(k, j), y = H(k + 1, j);
                H(k, j) = std::conj(g.c) * x + std::conj(g.s) * y;
                H(k + 1, j) = -g.s * x + g.c * y;
            }
            H(k + 1, k) = Complex(0);
        }
        for (Index k = lo; k < hi; ++k) {
            const Givens g = rots[static_cast<size_t>(k - lo)];
            const Index top = std::min(k + 1, hi);
            for (Index i = 0; i <= top; ++i) {
                const Complex u = H(i, k), v = H(i, k + 1);
                H(i, k) = u * g.c + v * g.s;
                H(i, k + 1) = -u * std::conj(g.s) + v * std::conj(g.c);
            }
        }
        for (Index i = lo; i <= hi; ++i) H(i, i) += mu;
    }
    vals(0) = H(0, 0);
    return vals;
}

Vector inverse_iteration(const Matrix& M, Complex shift,
                         const InverseIterationOptions& opts) {
    const Index n = M.rows();
    if (n != M.cols())
        throw LengthMismatch("inverse_iteration expects a square matrix");
    const double frob = M.norm();
    if (frob == 0.0) {
        Vector e = Vector::Zero(n);
        e(0) = Complex(1);
        return e;
    }
    const double tol = opts.tol * frob;
    const double floor_value =
        std::numeric_limits<double>::epsilon() * frob + 1e-300;
    const FlooredLU lu = floored_lu(M - shift * Matrix::Identity(n, n), floor_value);

    std::mt19937_64 gen(opts.seed);
    auto random_unit = [&] {
        Vector v(n);
        for (Index i = 0; i < n; ++i) {
            const double re = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
            const double im = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
            v(i) = Complex(re, im);
        }
        return unit(v);
    };

    // Keep polishing down to the rounding floor; stalled-but-within-tolerance
    // iterates are accepted, stalled ones above it trigger a random restart.
    const double res_floor = 8.0 * std::numeric_limits<double>::epsilon() * frob;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Vector v = (attempt == 0 && opts.start) ? unit(*opts.start) : random_unit();
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 50; ++it) {
            Vector w = lu.solve(v);
            const double nw = w.stableNorm();
            if (!std::isfinite(nw) || nw == 0.0) return v;  // singular solve: converged
            v = w / nw;
            const Complex mu = v.dot(M * v);  // Eigen dot conjugates the left argument
            const double res = (M * v - mu * v).stableNorm();
            if (res <= tol && (res <= res_floor || res >= 0.5 * prev)) return v;
            if (it > 2 && res >= 0.99 * prev) break;  // stagnated above tolerance
            prev = res;
        }
    }
    throw NonConvergence("inverse iteration failed after 3 restarts");
}

RealVector singular_values(const Matrix& M) {
    if (M.rows() != M.cols())
        throw LengthMismatch("singular_values expects a square matrix");
    const Index n = M.cols();
    Matrix A = M;
    constexpr double angle_tol = 1e-14;
    bool converged = n < 2;
    for (int sweep = 0; sweep < 30 && !converged; ++sweep) {
        converged = true;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const double a = A.col(p).squaredNorm();
                const double b = A.col(q).squaredNorm();
                const Complex g = A.col(p).dot(A.col(q));
                const double m = std::abs(g);
                if (m == 0.0 || a == 0.0 || b == 0.0) continue;
                if (m <= angle_tol * std::sqrt(a * b)) continue;  // numerically orthogonal
                const double zeta = (b - a) / (2.0 * m);
                const double t =
                    (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
                if (std::abs(t) < angle_tol) continue;
                converged = false;
                const double cs = 1.0 / std::hypot(1.0, t);
                const double sn = t * cs;
                const Complex ph = g / m;
                const Vector cp = A.col(p);
                const Vector cq = A.col(q);
                A.col(p) = cs * cp - sn * std::conj(ph) * cq;
                A.col(q) = sn * ph * cp + cs * cq;
            }
        }
    }
    if (!converged)
        throw NonConvergence("one-sided Jacobi did not settle in 30 sweeps");
    RealVector s(n);
    for (Index j = 0; j < n; ++j) s(j) = A.col(j).norm();
    std::sort(s.data(), s.data() + n, std::greater<double>());
    return s;
}

double smallest_singular_value(const Matrix& M) {
    const RealVector s = singular_values(M);
    return s(s.size() - 1);
}

EigenDecomposition eigendecompose(const Matrix& M, double tol, std::uint64_t seed) {
    const Index n = M.rows();
    EigenDecomposition d;
    d.values = qr_eigenvalues(M);
    d.vectors.resize(n, n);
    const double frob = M.norm();
    for (Index h = 0; h < n; ++h) {
        InverseIterationOptions opts;
        opts.seed = seed + static_cast<std::uint64_t>(h) + 1;
        Vector v = inverse_iteration(M, d.values(h), opts);
        const Complex mu = v.dot(M * v);
        if ((M * v - mu * v).stableNorm() > tol * frob)
            throw NonConvergence("eigenpair residual above requested tolerance");
        d.values(h) = mu;
        d.vectors.col(h) = v;
    }
    return d;
}

}  // namespace tritospec::numeric
