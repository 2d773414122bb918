// Copyright 2026 The ptsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptsim/tomo/mle.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <gsl/gsl_blas.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "ptsim/errors.hpp"
#include "ptsim/rng.hpp"

namespace ptsim::tomo {

namespace {

// Hermitian basis: E_ii, E_ij + E_ji, i(E_ij - E_ji) for i < j.
std::vector<CMatrix> hermitian_basis(Eigen::Index d) {
    std::vector<CMatrix> b;
    for (Eigen::Index i = 0; i < d; ++i) {
        CMatrix m = CMatrix::Zero(d, d);
        m(i, i) = 1.0;
        b.push_back(m);
    }
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            CMatrix re = CMatrix::Zero(d, d), im = CMatrix::Zero(d, d);
            re(i, j) = re(j, i) = 1.0;
            im(i, j) = cplx(0, 1);
            im(j, i) = cplx(0, -1);
            b.push_back(re);
            b.push_back(im);
        }
    return b;
}

Eigen::MatrixXd design(const std::vector<CMatrix> &q, const std::vector<CMatrix> &basis) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(q.size()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t k = 0; k < q.size(); ++k)
        for (std::size_t j = 0; j < basis.size(); ++j)
            a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = (basis[j] * q[k]).trace().real();
    return a;
}

// Parameter layout: d real diagonal entries, then (re, im) of each strictly
// lower entry in row-major order.
struct Layout {
    Eigen::Index d;
    std::size_t size() const { return static_cast<std::size_t>(d * d); }
};

CMatrix unpack(const gsl_vector *v, Layout l) {
    CMatrix t = CMatrix::Zero(l.d, l.d);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < l.d; ++i) t(i, i) = gsl_vector_get(v, k++);
    for (Eigen::Index i = 0; i < l.d; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            double re = gsl_vector_get(v, k++);
            double im = gsl_vector_get(v, k++);
            t(i, j) = cplx(re, im);
        }
    return t;
}

void pack(const CMatrix &t, gsl_vector *v, Layout l) {
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < l.d; ++i) gsl_vector_set(v, k++, t(i, i).real());
    for (Eigen::Index i = 0; i < l.d; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            gsl_vector_set(v, k++, t(i, j).real());
            gsl_vector_set(v, k++, t(i, j).imag());
        }
}

struct Objective {
    Layout layout;
    std::vector<double> n;  // normalized to sum 1
    // Row k holds (Re Q_k, Im Q_k) flattened, so mu = a * (Re X, Im X).
    Eigen::MatrixXd a;
    Eigen::VectorXd column_sum;

    Objective(const std::vector<CMatrix> &q, std::vector<double> counts, Eigen::Index d)
        : layout{d}, n(std::move(counts)), a(static_cast<Eigen::Index>(q.size()), 2 * d * d) {
        for (std::size_t k = 0; k < q.size(); ++k) {
            const auto row = static_cast<Eigen::Index>(k);
            const Eigen::MatrixXd re = q[k].real(), im = q[k].imag();
            a.row(row).head(d * d) = Eigen::Map<const Eigen::VectorXd>(re.data(), d * d);
            a.row(row).tail(d * d) = Eigen::Map<const Eigen::VectorXd>(im.data(), d * d);
        }
        column_sum = a.colwise().sum().transpose();
    }

    // Negative normalized log-likelihood and, if requested, its gradient in T.
    double eval(const CMatrix &t, CMatrix *grad_t) const {
        const Eigen::Index d = layout.d;
        const Eigen::Index dd = d * d;
        CMatrix x = t.adjoint() * t;
        const Eigen::MatrixXd re = x.real(), im = x.imag();
        Eigen::VectorXd xv(2 * dd);
        xv.head(dd) = Eigen::Map<const Eigen::VectorXd>(re.data(), dd);
        xv.tail(dd) = Eigen::Map<const Eigen::VectorXd>(im.data(), dd);
        const Eigen::VectorXd mu = a * xv;
        double f = mu.sum();
        Eigen::VectorXd w = Eigen::VectorXd::Zero(mu.size());
        for (Eigen::Index k = 0; k < mu.size(); ++k) {
            const double nk = n[static_cast<std::size_t>(k)];
            if (nk <= 0.0) continue;
            if (!(mu(k) > 0.0)) {
                if (grad_t) *grad_t = CMatrix::Zero(d, d);
                return std::numeric_limits<double>::infinity();
            }
            f -= nk * std::log(mu(k));
            w(k) = nk / mu(k);
        }
        if (grad_t) {
            // G = sum_k (n_k / mu_k - 1) Q_k, rebuilt from its real and imaginary parts
            const Eigen::VectorXd gv = a.transpose() * w - column_sum;
            CMatrix g(d, d);
            for (Eigen::Index j = 0; j < d; ++j)
                for (Eigen::Index i = 0; i < d; ++i) g(i, j) = cplx(gv(i + j * d), gv(dd + i + j * d));
            // d(-L)/dT components: -2 Re(T G), -2 Im(T G)
            *grad_t = -2.0 * (t * g);
        }
        return f;
    }
};

double f_cb(const gsl_vector *v, void *params) {
    auto *o = static_cast<Objective *>(params);
    return o->eval(unpack(v, o->layout), nullptr);
}

void write_grad(const CMatrix &g, gsl_vector *df, Layout l) {
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < l.d; ++i) gsl_vector_set(df, k++, g(i, i).real());
    for (Eigen::Index i = 0; i < l.d; ++i)
        for (Eigen::Index j = 0; j < i; ++j) {
            gsl_vector_set(df, k++, g(i, j).real());
            gsl_vector_set(df, k++, g(i, j).imag());
        }
}

void df_cb(const gsl_vector *v, void *params, gsl_vector *df) {
    auto *o = static_cast<Objective *>(params);
    CMatrix g;
    o->eval(unpack(v, o->layout), &g);
    write_grad(g, df, o->layout);
}

void fdf_cb(const gsl_vector *v, void *params, double *f, gsl_vector *df) {
    auto *o = static_cast<Objective *>(params);
    CMatrix g;
    *f = o->eval(unpack(v, o->layout), &g);
    write_grad(g, df, o->layout);
}

// Lower-triangular T with T^dagger T = x for positive definite x.
CMatrix lower_factor(const CMatrix &x) {
    const Eigen::Index d = x.rows();
    Eigen::PermutationMatrix<Eigen::Dynamic> rev(d);
    for (Eigen::Index i = 0; i < d; ++i) rev.indices()(i) = static_cast<int>(d - 1 - i);
    CMatrix xr = rev * x * rev.transpose();
    Eigen::LLT<CMatrix> llt(xr);
    CMatrix l = llt.matrixL();
    return rev * CMatrix(l.adjoint()) * rev.transpose();
}

CMatrix positive_start(const CMatrix &lin, double total) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (lin + lin.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    double top = std::max(ev.maxCoeff(), total / static_cast<double>(lin.rows()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 1e-3 * top);
    CMatrix x = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    return lower_factor(0.5 * (x + x.adjoint()));
}

struct Run {
    CMatrix t;
    double f;
    double grad_norm;
    long iterations;
};

Eigen::VectorXd flat_gradient(Objective &obj, const Eigen::VectorXd &v) {
    const Layout l = obj.layout;
    gsl_vector_const_view gv = gsl_vector_const_view_array(v.data(), l.size());
    CMatrix g;
    obj.eval(unpack(&gv.vector, l), &g);
    Eigen::VectorXd out(static_cast<Eigen::Index>(l.size()));
    gsl_vector_view ov = gsl_vector_view_array(out.data(), l.size());
    write_grad(g, &ov.vector, l);
    return out;
}

double flat_value(Objective &obj, const Eigen::VectorXd &v) {
    gsl_vector_const_view gv = gsl_vector_const_view_array(v.data(), obj.layout.size());
    return obj.eval(unpack(&gv.vector, obj.layout), nullptr);
}

// Damped saddle-free Newton: H -> V (|lambda| + mu) V^T, mu adapted per step.
void polish(Objective &obj, Run &r, const MleOptions &opts) {
    const Layout l = obj.layout;
    const auto n = static_cast<Eigen::Index>(l.size());
    Eigen::VectorXd v(n);
    gsl_vector_view vv = gsl_vector_view_array(v.data(), l.size());
    pack(r.t, &vv.vector, l);
    Eigen::VectorXd g = flat_gradient(obj, v);
    double f = flat_value(obj, v);
    double mu = -1.0;
    for (int it = 0; it < 200 && g.norm() >= opts.gradient_tolerance; ++it) {
        Eigen::MatrixXd h(n, n);
        const double step = 1e-6 * std::max(1.0, v.cwiseAbs().maxCoeff());
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::VectorXd a = v, b = v;
            a(j) += step;
            b(j) -= step;
            h.col(j) = (flat_gradient(obj, a) - flat_gradient(obj, b)) / (2.0 * step);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
        const Eigen::VectorXd ev = es.eigenvalues().cwiseAbs();
        const double top = std::max(ev.maxCoeff(), 1e-300);
        if (mu < 0.0) mu = 1e-6 * top;
        const Eigen::VectorXd gb = es.eigenvectors().transpose() * g;
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::VectorXd inv = (ev.array() + mu).inverse();
            Eigen::VectorXd cand = v - es.eigenvectors() * inv.cwiseProduct(gb);
            const double fc = flat_value(obj, cand);
            if (std::isfinite(fc) && fc <= f + 1e-12 * std::max(1.0, std::abs(f))) {
                Eigen::VectorXd gc = flat_gradient(obj, cand);
                if (gc.norm() < g.norm()) {
                    v = cand;
                    g = gc;
                    f = std::min(f, fc);
                    mu = std::max(mu * 0.1, 1e-14 * top);
                    improved = true;
                    break;
                }
            }
            mu *= 10.0;
        }
        ++r.iterations;
        if (!improved) break;
    }
    if (g.norm() < r.grad_norm) {
        r.t = unpack(&vv.vector, l);
        r.grad_norm = g.norm();
        r.f = flat_value(obj, v);
    }
}

Run bfgs(Objective &obj, const CMatrix &t0, const MleOptions &opts) {
    const Layout l = obj.layout;
    gsl_multimin_function_fdf fn{&f_cb, &df_cb, &fdf_cb, l.size(), &obj};
    gsl_vector *x = gsl_vector_alloc(l.size());
    pack(t0, x, l);
    gsl_multimin_fdfminimizer *m = gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, l.size());
    gsl_multimin_fdfminimizer_set(m, &fn, x, 0.01 * std::max(1.0, gsl_blas_dnrm2(x)), 0.1);
    long it = 0;
    int status = GSL_CONTINUE;
    while (it < opts.max_iterations) {
        ++it;
        status = gsl_multimin_fdfminimizer_iterate(m);
        if (status) break;
        if (gsl_blas_dnrm2(m->gradient) < opts.gradient_tolerance) break;
    }
    Run r{unpack(m->x, l), m->f, gsl_blas_dnrm2(m->gradient), it};
    gsl_multimin_fdfminimizer_free(m);
    gsl_vector_free(x);
    return r;
}

// X = U T^dagger T U^dagger with U fixed. The factor is only well conditioned
// when the largest eigenvalue of X sits in the last diagonal slot, so a stalled
// run restarts in the eigenbasis of its own estimate, eigenvalues ascending.
struct Frame {
    CMatrix u;
    Run run;
    CMatrix x() const { return u * run.t.adjoint() * run.t * u.adjoint(); }
};

Frame descend(const std::vector<CMatrix> &q, const std::vector<double> &n, Objective &obj, const CMatrix &t0,
              const MleOptions &opts) {
    const Eigen::Index d = obj.layout.d;
    Frame plain{CMatrix::Identity(d, d), bfgs(obj, t0, opts)};
    if (plain.run.grad_norm < opts.gradient_tolerance) return plain;

    Eigen::SelfAdjointEigenSolver<CMatrix> es(plain.x());
    Eigen::VectorXd ev = es.eigenvalues();
    const double floor = 1e-14 * std::max(ev.maxCoeff(), 1e-300);
    CMatrix t1 = CMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) t1(i, i) = std::sqrt(std::max(ev(i), floor));
    std::vector<CMatrix> qr;
    qr.reserve(q.size());
    for (const auto &m : q) qr.push_back(es.eigenvectors().adjoint() * m * es.eigenvectors());
    Objective rotated(qr, n, d);
    Frame turned{es.eigenvectors(), bfgs(rotated, t1, opts)};
    turned.run.iterations += plain.run.iterations;
    if (turned.run.grad_norm >= opts.gradient_tolerance) polish(rotated, turned.run, opts);
    if (turned.run.grad_norm < plain.run.grad_norm) return turned;
    plain.run.iterations = turned.run.iterations;
    return plain;
}

}  // namespace

CMatrix linear_inversion(const MleProblem &p) {
    if (p.q.empty()) throw InvalidInput("no measurement operators");
    const Eigen::Index d = p.q.front().rows();
    auto basis = hermitian_basis(d);
    Eigen::MatrixXd a = design(p.q, basis);
    Eigen::VectorXd b(static_cast<Eigen::Index>(p.n.size()));
    for (std::size_t k = 0; k < p.n.size(); ++k) b(static_cast<Eigen::Index>(k)) = p.n[k];
    Eigen::VectorXd c = a.completeOrthogonalDecomposition().solve(b);
    CMatrix x = CMatrix::Zero(d, d);
    for (std::size_t j = 0; j < basis.size(); ++j) x += c(static_cast<Eigen::Index>(j)) * basis[j];
    return x;
}

SpanReport measurement_span(const std::vector<CMatrix> &q, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    auto basis = hermitian_basis(d);
    SpanReport r;
    r.dim2 = static_cast<int>(basis.size());
    if (q.empty()) {
        r.missing = basis;
        return r;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design(q, basis), Eigen::ComputeFullV);
    const Eigen::VectorXd &s = svd.singularValues();
    const double tol = 1e-9 * std::max(1.0, s.size() ? s(0) : 0.0);
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++r.rank;
    const Eigen::MatrixXd &v = svd.matrixV();
    for (Eigen::Index j = r.rank; j < v.cols(); ++j) {
        CMatrix m = CMatrix::Zero(d, d);
        for (std::size_t b = 0; b < basis.size(); ++b) m += v(static_cast<Eigen::Index>(b), j) * basis[b];
        r.missing.push_back(m);
    }
    return r;
}

MleSolution solve_mle(const MleProblem &p, const MleOptions &opts) {
    if (p.q.empty() || p.q.size() != p.n.size()) throw InvalidInput("measurement operators and counts disagree");
    double total = 0.0;
    for (double v : p.n) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidInput("counts must be finite and nonnegative");
        total += v;
    }
    if (total <= 0.0) throw InvalidInput("all counts are zero");

    gsl_set_error_handler_off();
    const Eigen::Index d = p.q.front().rows();
    // Operators rescaled to unit mean trace so the internal X stays O(1).
    double qscale = 0.0;
    for (const auto &q : p.q) qscale += q.trace().real();
    qscale /= static_cast<double>(p.q.size());
    if (!(qscale > 0.0) || !std::isfinite(qscale)) throw InvalidInput("measurement operators have no weight");
    std::vector<CMatrix> qn;
    qn.reserve(p.q.size());
    for (const auto &q : p.q) qn.push_back(q / qscale);
    std::vector<double> unit_n;
    for (double v : p.n) unit_n.push_back(v / total);
    Objective obj(qn, unit_n, d);

    MleProblem unit{qn, unit_n};
    std::vector<CMatrix> starts{positive_start(linear_inversion(unit), 1.0)};
    Engine rng(derive_seed(opts.seed, "mle-restarts"));
    std::normal_distribution<double> g(0.0, 1.0);
    const double scale = std::sqrt(starts.front().squaredNorm() / static_cast<double>(d * d));
    for (int r = 1; r < opts.restarts; ++r) {
        CMatrix t = CMatrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            t(i, i) = std::abs(g(rng)) * scale + 1e-3;
            for (Eigen::Index j = 0; j < i; ++j) {
                double re = g(rng), im = g(rng);
                t(i, j) = cplx(re, im) * scale;
            }
        }
        starts.push_back(t);
    }

    MleSolution best;
    double best_f = std::numeric_limits<double>::infinity();
    long iterations = 0;
    for (const auto &t0 : starts) {
        Frame fr = descend(qn, unit_n, obj, t0, opts);
        iterations += fr.run.iterations;
        if (fr.run.f < best_f) {
            best_f = fr.run.f;
            best.x = fr.x() * (total / qscale);
            best.gradient_norm = fr.run.grad_norm;
        }
    }
    best.iterations = iterations;
    best.converged = best.gradient_norm < opts.gradient_tolerance;
    double ll = 0.0;
    for (std::size_t k = 0; k < p.q.size(); ++k) {
        double mu = (best.x * p.q[k]).trace().real();
        if (p.n[k] > 0.0) ll += p.n[k] * std::log(mu);
        ll -= mu;
    }
    best.log_likelihood = ll;
    return best;
}

}  // namespace ptsim::tomo
