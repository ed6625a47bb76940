#include "dirac/dirac_scatter.h"

#include "dirac/canonical.hpp"
#include "dirac/factor.hpp"
#include "dirac/glm.hpp"
#include "dirac/io.hpp"
#include "dirac/jost.hpp"
#include "dirac/nlsflow.hpp"

#include <cmath>
#include <new>

using namespace dirac;

struct ds_potential {
    Potential q;
};
struct ds_table {
    ScatteringTable t;
};
struct ds_zeros {
    ZeroSet z;
};
struct ds_xi {
    XiSequence xi;
};
struct ds_hamiltonian {
    Hamiltonian h;
};

namespace {

thread_local std::string g_error;

ds_status code_of(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Parameter:
        return DS_ERR_PARAMETER;
    case ErrorKind::Precondition:
        return DS_ERR_PRECONDITION;
    case ErrorKind::Class:
        return DS_ERR_CLASS;
    case ErrorKind::Numerical:
        return DS_ERR_NUMERICAL;
    case ErrorKind::IO:
        return DS_ERR_IO;
    }
    return DS_ERR_INTERNAL;
}

template <class F>
ds_status guard(F&& body)
{
    try {
        g_error.clear();
        body();
        return DS_OK;
    } catch (const Error& e) {
        g_error = e.what();
        return code_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_error = "out of memory";
        return DS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_error = e.what();
        return DS_ERR_INTERNAL;
    }
}

template <class T>
void need(const T* p, const char* what)
{
    if (!p)
        throw Error(ErrorKind::Parameter, std::string("null argument: ") + what);
}

std::vector<double> k_grid(double kmax, int nk)
{
    if (!(kmax > 0.0) || nk < 2)
        throw Error(ErrorKind::Parameter, "k grid needs kmax > 0 and nk >= 2");
    return linspace(-kmax, kmax, nk);
}

ScatteringTable table_of(const std::vector<double>& k, const Evaluator& a, const Evaluator& b)
{
    ScatteringTable t;
    t.k = k;
    t.a.resize(k.size());
    t.b.resize(k.size());
    parallel_for(k.size(), [&](std::size_t i) {
        t.a[i] = a(cplx(k[i], 0.0));
        t.b[i] = b(cplx(k[i], 0.0));
    });
    return t;
}

ZeroSet zeros_of_b(const TransitionCoefficients& tc, double gamma, double R)
{
    if (!(R > 0.0))
        throw Error(ErrorKind::Parameter, "radius must be positive");
    return find_zeros(tc.eval_b, b_zero_region(gamma, R), tc.eval_b_d);
}

Rect resonance_window(double gamma, double R)
{
    return Rect{-R - 0.0173, R + 0.0119, -12.0 / gamma, 0.0};
}

Potential moved_back(const Potential& q, double offset)
{
    return offset == 0.0 ? q : transform(q, TransformKind::Shift, -offset);
}

}  // namespace

extern "C" {

const char* ds_last_error(void) { return g_error.c_str(); }
const char* ds_version(void) { return tool_version(); }

ds_status ds_potential_generate(const char* kind, double gamma, int n, const char* const* keys,
                                const double* values, int count, uint64_t seed, ds_potential** out)
{
    return guard([&] {
        need(kind, "kind");
        need(out, "out");
        std::map<std::string, double> params;
        for (int i = 0; i < count; ++i) {
            need(keys, "keys");
            need(values, "values");
            need(keys[i], "key");
            params[keys[i]] = values[i];
        }
        Potential q = generate(parse_potential_kind(kind), gamma, n, params, seed);
        *out = new ds_potential{std::move(q)};
    });
}

ds_status ds_potential_from_samples(double gamma, double offset, int n, const double* re,
                                    const double* im, ds_potential** out)
{
    return guard([&] {
        need(re, "re");
        need(out, "out");
        if (n < 2)
            throw Error(ErrorKind::Parameter, "potential: need at least 2 samples");
        Potential q;
        q.gamma = gamma;
        q.offset = offset;
        q.samples.resize(n);
        for (int j = 0; j < n; ++j)
            q.samples[j] = cplx(re[j], im ? im[j] : 0.0);
        q.validate();
        *out = new ds_potential{std::move(q)};
    });
}

ds_status ds_potential_read(const char* path, ds_potential** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new ds_potential{read_potential(path)};
    });
}

ds_status ds_potential_write(const ds_potential* q, const char* path)
{
    return guard([&] {
        need(q, "potential");
        need(path, "path");
        write_potential(path, q->q);
    });
}

void ds_potential_free(ds_potential* q) { delete q; }
int ds_potential_size(const ds_potential* q) { return q ? q->q.n() : 0; }
double ds_potential_gamma(const ds_potential* q) { return q ? q->q.gamma : 0.0; }
double ds_potential_offset(const ds_potential* q) { return q ? q->q.offset : 0.0; }

ds_status ds_potential_values(const ds_potential* q, double* x, double* re, double* im)
{
    return guard([&] {
        need(q, "potential");
        auto v = q->q.node_values();
        for (int j = 0; j < q->q.n(); ++j) {
            if (x)
                x[j] = q->q.node(j);
            if (re)
                re[j] = v[j].real();
            if (im)
                im[j] = v[j].imag();
        }
    });
}

ds_status ds_potential_transform(const ds_potential* q, const char* kind, double param,
                                 ds_potential** out)
{
    return guard([&] {
        need(q, "potential");
        need(kind, "kind");
        need(out, "out");
        *out = new ds_potential{transform(q->q, parse_transform_kind(kind), param)};
    });
}

ds_status ds_potential_classify(const ds_potential* q, double tol, int* even, int* odd, int* real)
{
    return guard([&] {
        need(q, "potential");
        SymmetryFlags f = classify_symmetry(q->q, tol);
        if (even)
            *even = f.even;
        if (odd)
            *odd = f.odd;
        if (real)
            *real = f.real;
    });
}

ds_status ds_potential_distance(const ds_potential* q, const ds_potential* p, double* dist)
{
    return guard([&] {
        need(q, "q");
        need(p, "p");
        need(dist, "dist");
        *dist = l2_distance(q->q, p->q);
    });
}

ds_status ds_forward(const ds_potential* q, double kmax, int nk, double tol, ds_table** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        auto k = k_grid(kmax, nk);
        auto tc = transition_coefficients(q->q, k, tol);
        ScatteringTable t;
        t.k = k;
        t.a = tc.a;
        t.b = tc.b;
        *out = new ds_table{std::move(t)};
    });
}

ds_status ds_table_unitarity(const ds_table* t, double* defect)
{
    return guard([&] {
        need(t, "table");
        need(defect, "defect");
        double d = 0.0;
        for (int j = 0; j < t->t.size(); ++j)
            d = std::max(d, std::abs(std::norm(t->t.a[j]) - std::norm(t->t.b[j]) - 1.0));
        *defect = d;
    });
}

ds_status ds_b_class(const ds_potential* q, double kmax, int nk, double* even, double* odd,
                     double* real)
{
    return guard([&] {
        need(q, "potential");
        auto tc = transition_coefficients(q->q, {});
        auto r = b_class_residuals(tc.eval_b, k_grid(kmax, nk), q->q.gamma + 2.0 * q->q.offset);
        if (even)
            *even = r.even;
        if (odd)
            *odd = r.odd;
        if (real)
            *real = r.real;
    });
}

ds_status ds_table_from_arrays(int n, const double* k, const double* a_re, const double* a_im,
                               const double* b_re, const double* b_im, ds_table** out)
{
    return guard([&] {
        need(k, "k");
        need(a_re, "a_re");
        need(a_im, "a_im");
        need(b_re, "b_re");
        need(b_im, "b_im");
        need(out, "out");
        if (n < 1)
            throw Error(ErrorKind::Parameter, "table: empty");
        ScatteringTable t;
        for (int j = 0; j < n; ++j) {
            if (j > 0 && !(k[j] > k[j - 1]))
                throw Error(ErrorKind::Parameter, "table: k must increase");
            t.k.push_back(k[j]);
            t.a.emplace_back(a_re[j], a_im[j]);
            t.b.emplace_back(b_re[j], b_im[j]);
        }
        *out = new ds_table{std::move(t)};
    });
}

ds_status ds_table_read(const char* path, ds_table** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new ds_table{read_scattering(path)};
    });
}

ds_status ds_table_write(const ds_table* t, const char* path)
{
    return guard([&] {
        need(t, "table");
        need(path, "path");
        write_scattering(path, t->t);
    });
}

void ds_table_free(ds_table* t) { delete t; }
int ds_table_size(const ds_table* t) { return t ? t->t.size() : 0; }

ds_status ds_table_get(const ds_table* t, double* k, double* a_re, double* a_im, double* b_re,
                       double* b_im)
{
    return guard([&] {
        need(t, "table");
        for (int j = 0; j < t->t.size(); ++j) {
            if (k)
                k[j] = t->t.k[j];
            if (a_re)
                a_re[j] = t->t.a[j].real();
            if (a_im)
                a_im[j] = t->t.a[j].imag();
            if (b_re)
                b_re[j] = t->t.b[j].real();
            if (b_im)
                b_im[j] = t->t.b[j].imag();
        }
    });
}

ds_status ds_resonances(const ds_potential* q, const double* rect, ds_zeros** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        Rect r = rect ? Rect{rect[0], rect[1], rect[2], rect[3]}
                      : default_resonance_region(q->q.gamma);
        if (!(r.re_hi > r.re_lo) || !(r.im_hi > r.im_lo))
            throw Error(ErrorKind::Parameter, "resonances: empty rectangle");
        auto tc = transition_coefficients(q->q, {});
        *out = new ds_zeros{find_zeros(tc.eval_a, r, tc.eval_a_d)};
    });
}

ds_status ds_b_zeros(const ds_potential* q, double radius, ds_zeros** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        auto tc = transition_coefficients(q->q, {});
        *out = new ds_zeros{zeros_of_b(tc, q->q.gamma, radius)};
    });
}

ds_status ds_zeros_read(const char* path, ds_zeros** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new ds_zeros{read_zeros(path)};
    });
}

ds_status ds_zeros_write(const ds_zeros* z, const char* path)
{
    return guard([&] {
        need(z, "zeros");
        need(path, "path");
        write_zeros(path, z->z);
    });
}

void ds_zeros_free(ds_zeros* z) { delete z; }
int ds_zeros_count(const ds_zeros* z) { return z ? static_cast<int>(z->z.zeros.size()) : 0; }

ds_status ds_zeros_get(const ds_zeros* z, int i, double* re, double* im, int* mult)
{
    return guard([&] {
        need(z, "zeros");
        if (i < 0 || i >= static_cast<int>(z->z.zeros.size()))
            throw Error(ErrorKind::Parameter, "zero index out of range");
        const Zero& e = z->z.zeros[i];
        if (re)
            *re = e.location.real();
        if (im)
            *im = e.location.imag();
        if (mult)
            *mult = e.multiplicity;
    });
}

ds_status ds_counting(const ds_zeros* z, const double* radii, int nr, double delta, int* plus,
                      int* minus, double* slope)
{
    return guard([&] {
        need(z, "zeros");
        need(radii, "radii");
        CountingReport c = counting_function(z->z, std::vector<double>(radii, radii + nr), delta);
        for (int i = 0; i < nr; ++i) {
            if (plus)
                plus[i] = c.counts_plus[i];
            if (minus)
                minus[i] = c.counts_minus[i];
        }
        if (slope)
            *slope = c.fitted_slope;
    });
}

ds_status ds_forbidden(const ds_zeros* z, double gamma, double eps, double depth, double* C,
                       int* shallow)
{
    return guard([&] {
        need(z, "zeros");
        ForbiddenDomainFit f = forbidden_fit(z->z, gamma, eps, {depth});
        if (C)
            *C = f.C;
        if (shallow)
            *shallow = f.strip_counts.at(0);
    });
}

ds_status ds_invert(const ds_table* t, const char* side, const char* from, double gamma, int n,
                    ds_potential** out, double* condition)
{
    return guard([&] {
        need(t, "table");
        need(side, "side");
        need(from, "from");
        need(out, "out");
        Side s = parse_side(side);
        std::string src = from;
        SpectralGrid bg = t->t.grid_b();
        SpectralGrid ag;
        if (src == "reflection")
            ag = t->t.grid_a();
        else if (src == "b")
            ag = a_from_b_grid(bg);
        else
            throw Error(ErrorKind::Parameter, "invert: --from must be reflection or b");
        double cond = 1.0;
        Potential q = invert_reflection(reflection_from_ab(ag, bg, s), s, gamma, n, 0.0, &cond);
        if (condition)
            *condition = cond;
        *out = new ds_potential{std::move(q)};
    });
}

ds_status ds_a_from_b(const ds_table* t, ds_table** out)
{
    return guard([&] {
        need(t, "table");
        need(out, "out");
        ScatteringTable r = t->t;
        r.a = a_from_b_grid(t->t.grid_b()).values;
        *out = new ds_table{std::move(r)};
    });
}

ds_status ds_xi_of(const ds_potential* q, double radius, ds_xi** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        auto tc = transition_coefficients(q->q, {});
        XiSequence xi;
        if (std::abs(leading_coefficient(tc.eval_b, 0.1).second) != 0.0)
            xi = xi_of(tc.eval_b, zeros_of_b(tc, q->q.gamma, radius));
        *out = new ds_xi{std::move(xi)};
    });
}

ds_status ds_xi_read(const char* path, ds_xi** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new ds_xi{read_xi(path)};
    });
}

ds_status ds_xi_write(const ds_xi* xi, const char* path)
{
    return guard([&] {
        need(xi, "xi");
        need(path, "path");
        write_xi(path, xi->xi);
    });
}

void ds_xi_free(ds_xi* xi) { delete xi; }

ds_status ds_xi_get(const ds_xi* xi, int* defined, double* xi0_re, double* xi0_im, int* p,
                    int* count)
{
    return guard([&] {
        need(xi, "xi");
        if (defined)
            *defined = xi->xi.defined;
        if (xi0_re)
            *xi0_re = xi->xi.xi0.real();
        if (xi0_im)
            *xi0_im = xi->xi.xi0.imag();
        if (p)
            *p = xi->xi.p;
        if (count)
            *count = static_cast<int>(xi->xi.signs.size());
    });
}

ds_status ds_xi_signs(const ds_xi* xi, int* signs)
{
    return guard([&] {
        need(xi, "xi");
        need(signs, "signs");
        for (std::size_t i = 0; i < xi->xi.signs.size(); ++i)
            signs[i] = xi->xi.signs[i];
    });
}

ds_status ds_b_from_a(const ds_potential* q, const ds_xi* xi, double radius, double kmax, int nk,
                      ds_table** out, double* convergence)
{
    return guard([&] {
        need(q, "potential");
        need(xi, "xi");
        need(out, "out");
        auto k = k_grid(kmax, nk);
        auto tc = transition_coefficients(q->q, {});
        ZeroSet zB = modulus_zeros(tc.eval_a, q->q.gamma, radius);
        BFromA bf = b_from_a_xi(tc.eval_a, xi->xi, zB, q->q.gamma, radius, q->q.offset, k);
        if (convergence)
            *convergence = bf.convergence_estimate;
        *out = new ds_table{table_of(k, tc.eval_a, bf.eval)};
    });
}

ds_status ds_iso(const ds_potential* q, const int* flip, int nflip, double alpha, double radius,
                 int n, ds_potential** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        if (nflip > 0)
            need(flip, "flip");
        double d = 0.0;
        Potential qc = canonical_form(q->q, &d);
        auto tc = transition_coefficients(qc, {});
        ZeroSet all = zeros_of_b(tc, qc.gamma, radius);
        ZeroSet nonreal;
        for (const auto& z : all.zeros)
            if (std::abs(z.location.imag()) > 1e-6 * std::max(1.0, std::abs(z.location)))
                nonreal.zeros.push_back(z);
        sort_zeros(nonreal.zeros);
        Evaluator b2 = iso_factor(tc.eval_b, nonreal, std::vector<int>(flip, flip + nflip), alpha);
        InvertReport rep = invert_from_b(b2, qc.gamma, n, Side::Left, tc.eval_a);
        *out = new ds_potential{moved_back(rep.q, d)};
    });
}

ds_status ds_shift_zero(const ds_potential* q, double from_re, double from_im, int remove,
                        double to_re, double to_im, int n, ds_potential** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        double d = 0.0;
        Potential qc = canonical_form(q->q, &d);
        auto tc = transition_coefficients(qc, {});
        std::optional<cplx> to;
        if (!remove)
            to = cplx(to_re, to_im);
        Evaluator b2 = shift_zero(tc.eval_b, cplx(from_re, from_im), to);
        InvertReport rep = invert_from_b(b2, qc.gamma, n);
        *out = new ds_potential{moved_back(rep.q, d)};
    });
}

ds_status ds_shift_resonance(const ds_potential* q, double from_re, double from_im, double to_re,
                             double to_im, double radius, double kmax, int nk, ds_table** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        auto k = k_grid(kmax, nk);
        const Potential& p = q->q;
        auto tc = transition_coefficients(p, {});
        Evaluator a2 = shift_resonance(tc.eval_a, cplx(from_re, from_im), cplx(to_re, to_im));
        XiSequence xi = xi_of(tc.eval_b, zeros_of_b(tc, p.gamma, radius));
        ZeroSet zB = modulus_zeros(a2, p.gamma, radius);
        BFromA bf = b_from_a_xi(a2, xi, zB, p.gamma, radius, p.offset);
        *out = new ds_table{table_of(k, a2, bf.eval)};
    });
}

ds_status ds_hamiltonian_of(const ds_potential* q, ds_hamiltonian** out)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        *out = new ds_hamiltonian{hamiltonian_of(q->q)};
    });
}

ds_status ds_hamiltonian_potential(const ds_hamiltonian* h, ds_potential** out)
{
    return guard([&] {
        need(h, "hamiltonian");
        need(out, "out");
        *out = new ds_potential{potential_of(h->h)};
    });
}

ds_status ds_hamiltonian_normalize(const ds_hamiltonian* h, ds_hamiltonian** h0, double* C,
                                   double* reassembly_error)
{
    return guard([&] {
        need(h, "hamiltonian");
        need(h0, "h0");
        Normalized nz = normalize(h->h);
        if (C) {
            C[0] = nz.data.c11;
            C[1] = nz.data.c12;
            C[2] = nz.data.c22;
        }
        if (reassembly_error) {
            Hamiltonian r = reassemble(nz);
            double e = 0.0;
            for (int j = 0; j < r.n(); ++j)
                e = std::max({e, std::abs(r.h11[j] - h->h.h11[j]), std::abs(r.h12[j] - h->h.h12[j]),
                              std::abs(r.h22[j] - h->h.h22[j])});
            *reassembly_error = e;
        }
        *h0 = new ds_hamiltonian{std::move(nz.h0)};
    });
}

ds_status ds_hamiltonian_scattering(const ds_hamiltonian* h, double kmax, int nk, ds_table** out)
{
    return guard([&] {
        need(h, "hamiltonian");
        need(out, "out");
        auto k = k_grid(kmax, nk);
        HamiltonianScattering hs = scattering_of_hamiltonian(h->h, k);
        ScatteringTable t;
        t.k = k;
        for (const auto& s : hs.s) {
            cplx a = 1.0 / s.transmission;
            t.a.push_back(a);
            t.b.push_back(s.r_minus * a);
        }
        *out = new ds_table{std::move(t)};
    });
}

ds_status ds_hamiltonian_read(const char* path, ds_hamiltonian** out)
{
    return guard([&] {
        need(path, "path");
        need(out, "out");
        *out = new ds_hamiltonian{read_hamiltonian(path)};
    });
}

ds_status ds_hamiltonian_write(const ds_hamiltonian* h, const char* path)
{
    return guard([&] {
        need(h, "hamiltonian");
        need(path, "path");
        write_hamiltonian(path, h->h);
    });
}

void ds_hamiltonian_free(ds_hamiltonian* h) { delete h; }
int ds_hamiltonian_size(const ds_hamiltonian* h) { return h ? h->h.n() : 0; }

ds_status ds_hamiltonian_get(const ds_hamiltonian* h, double* x, double* h11, double* h12,
                             double* h22)
{
    return guard([&] {
        need(h, "hamiltonian");
        for (int j = 0; j < h->h.n(); ++j) {
            if (x)
                x[j] = h->h.x[j];
            if (h11)
                h11[j] = h->h.h11[j];
            if (h12)
                h12[j] = h->h.h12[j];
            if (h22)
                h22[j] = h->h.h22[j];
        }
    });
}

ds_status ds_action(const ds_potential* q, double kmax, int nk, double radius, double* k,
                    double* direct, double* series, double* tail_estimate)
{
    return guard([&] {
        need(q, "potential");
        if (!(radius > 0.0))
            throw Error(ErrorKind::Parameter, "action: radius must be positive");
        auto kg = k_grid(kmax, nk);
        auto tc = transition_coefficients(q->q, {});
        auto dir = action_direct(tc.eval_a, kg);
        ZeroSet res = find_zeros(tc.eval_a, resonance_window(q->q.gamma, radius), tc.eval_a_d);
        double la0 = std::log(std::abs(tc.eval_a(cplx(0.0, 0.0))));
        ActionSeries s = action_series(res, la0, kg, radius, q->q.gamma);
        for (int i = 0; i < nk; ++i) {
            if (k)
                k[i] = kg[i];
            if (direct)
                direct[i] = dir[i];
            if (series)
                series[i] = s.corrected[i];
        }
        if (tail_estimate)
            *tail_estimate = s.tail_estimate;
    });
}

ds_status ds_angle(const ds_potential* q, double kmax, int nk, double t, double radius, double* k,
                   double* formula, double* direct, int* valid)
{
    return guard([&] {
        need(q, "potential");
        auto kg = k_grid(kmax, nk);
        auto tc = transition_coefficients(q->q, {});
        XiSequence xi = xi_of(tc.eval_b, zeros_of_b(tc, q->q.gamma, radius));
        AngleProfile ap = angle(xi, kg, t, q->q.gamma, q->q.offset, radius, tc.eval_b);
        for (int i = 0; i < nk; ++i) {
            if (k)
                k[i] = kg[i];
            if (formula)
                formula[i] = ap.formula[i];
            if (direct)
                direct[i] = ap.direct[i];
            if (valid)
                valid[i] = ap.valid[i];
        }
    });
}

ds_status ds_evolve(const ds_potential* q, double t, ds_potential** out, double* window_lo,
                    double* window_hi, double* tail_ratio)
{
    return guard([&] {
        need(q, "potential");
        need(out, "out");
        EvolveResult r = evolve(q->q, t);
        if (window_lo)
            *window_lo = r.window_lo;
        if (window_hi)
            *window_hi = r.window_hi;
        if (tail_ratio)
            *tail_ratio = r.tail_ratio;
        *out = new ds_potential{std::move(r.q)};
    });
}

ds_status ds_write_columns(const char* path, int n, const double* x, const double* y)
{
    return guard([&] {
        need(path, "path");
        need(x, "x");
        need(y, "y");
        write_columns(path, std::vector<double>(x, x + n), std::vector<double>(y, y + n));
    });
}

ds_status ds_write_meta(const char* path, const char* const* keys, const char* const* values,
                        int count)
{
    return guard([&] {
        need(path, "path");
        std::map<std::string, std::string> m;
        for (int i = 0; i < count; ++i) {
            need(keys[i], "key");
            need(values[i], "value");
            m[keys[i]] = values[i];
        }
        write_meta(path, m);
    });
}

}  // extern "C"
