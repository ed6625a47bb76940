#include "dirac/dirac_scatter.h"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes: 0 ok, 1 class / precondition / parameter problems, 2 I/O.
struct Failure {
    int code;
    std::string message;
};

void check(ds_status s)
{
    if (s != DS_OK)
        throw Failure{s == DS_ERR_IO ? 2 : 1, ds_last_error()};
}

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    Handle() = default;
    Handle(const Handle&) = delete;
    Handle& operator=(const Handle&) = delete;
    ~Handle() { Free(p); }
    T** out() { return &p; }
    T* get() const { return p; }
};

using Pot = Handle<ds_potential, ds_potential_free>;
using Table = Handle<ds_table, ds_table_free>;
using Zeros = Handle<ds_zeros, ds_zeros_free>;
using Xi = Handle<ds_xi, ds_xi_free>;
using Ham = Handle<ds_hamiltonian, ds_hamiltonian_free>;

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Inputs must be readable files, outputs must go to an existing directory.
void require_input(const std::string& path)
{
    if (path.empty())
        throw Failure{1, "missing input file option"};
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec))
        throw Failure{2, "input file not found: " + path};
}

void require_output(const std::string& path)
{
    if (path.empty())
        return;
    auto dir = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!dir.empty() && !std::filesystem::is_directory(dir, ec))
        throw Failure{2, "output directory does not exist: " + dir.string()};
}

struct Meta {
    std::vector<std::string> keys, values;
    void add(const std::string& k, const std::string& v)
    {
        keys.push_back(k);
        values.push_back(v);
    }
    void add(const std::string& k, double v) { add(k, fmt(v)); }
    void write(const std::string& path) const
    {
        std::vector<const char*> kp, vp;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            kp.push_back(keys[i].c_str());
            vp.push_back(values[i].c_str());
        }
        check(ds_write_meta(path.c_str(), kp.data(), vp.data(), static_cast<int>(kp.size())));
    }
};

void load(Pot& q, const std::string& path)
{
    require_input(path);
    check(ds_potential_read(path.c_str(), q.out()));
}

std::vector<double> node_values(const Pot& q, int which)
{
    int n = ds_potential_size(q.get());
    std::vector<double> x(n), re(n), im(n);
    check(ds_potential_values(q.get(), x.data(), re.data(), im.data()));
    return which == 0 ? x : which == 1 ? re : im;
}

void write_table(const Table& t, const std::string& out, Meta meta)
{
    check(ds_table_write(t.get(), out.c_str()));
    meta.write(out);
}

void write_potential(const Pot& q, const std::string& out, Meta meta)
{
    check(ds_potential_write(q.get(), out.c_str()));
    meta.write(out);
}

std::pair<double, double> parse_complex(const std::vector<double>& v, const std::string& name)
{
    if (v.size() != 2)
        throw Failure{1, name + " takes two numbers: re im"};
    return {v[0], v[1]};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Forward and inverse scattering for 1D Dirac operators with compactly supported "
                 "potentials"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ds_version());

    std::string potential, in, out, out2, out3, out4, xi_path, side = "left", from = "reflection";
    std::string of = "a", kind, quantity, verb;
    double kmax = 0.0, tol = 1e-10, gamma = 1.0, radius = 0.0, alpha = 0.0, t = 0.0, param = 0.0;
    double sym_tol = 1e-8;
    int nk = 0, n = 0;
    std::vector<double> rect, zfrom, zto;
    std::vector<int> flip;
    bool remove = false;

    auto* forward = app.add_subcommand("forward", "a and b on a real k grid");
    forward->add_option("--potential", potential, "potential file")->required();
    forward->add_option("--kmax", kmax, "half width of the k grid (default 96/gamma)");
    forward->add_option("--nk", nk, "node count (default spacing pi/(32 gamma))");
    forward->add_option("--tol", tol, "ODE tolerance per unit length");
    forward->add_option("--out", out, "scattering file")->required();

    auto* resonances = app.add_subcommand("resonances", "zeros of a (resonances) or of b");
    resonances->add_option("--potential", potential, "potential file")->required();
    resonances->add_option("--of", of, "a or b")->check(CLI::IsMember({"a", "b"}));
    resonances->add_option("--rect", rect, "re_lo re_hi im_lo im_hi (zeros of a)")->expected(4);
    resonances->add_option("--radius", radius, "|Re k| bound for zeros of b (default 40/gamma)");
    resonances->add_option("--xi-out", xi_path, "sign data file (with --of b)");
    resonances->add_option("--out", out, "zeros file")->required();

    auto* invert = app.add_subcommand("invert", "potential from scattering data");
    invert->add_option("--in", in, "scattering file")->required();
    invert->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
    invert->add_option("--from", from, "reflection or b")->check(CLI::IsMember({"reflection", "b"}));
    invert->add_option("--gamma", gamma, "support length");
    invert->add_option("--n", n, "node count (default 512)");
    invert->add_option("--out", out, "potential file")->required();

    auto* afromb = app.add_subcommand("a-from-b", "replace a by the outer function built from |b|");
    afromb->add_option("--in", in, "scattering file")->required();
    afromb->add_option("--out", out, "scattering file")->required();

    auto* bfroma = app.add_subcommand("b-from-a", "b from a(q) and sign data by the product formula");
    bfroma->add_option("--potential", potential, "potential supplying a")->required();
    bfroma->add_option("--xi", xi_path, "sign data file")->required();
    bfroma->add_option("--radius", radius, "truncation radius (default 60/gamma)");
    bfroma->add_option("--kmax", kmax, "half width of the output grid (default 10/gamma)");
    bfroma->add_option("--nk", nk, "node count (default 401)");
    bfroma->add_option("--out", out, "scattering file")->required();

    auto* iso = app.add_subcommand("iso", "flip non-real zeros of b keeping a");
    iso->add_option("--potential", potential, "potential file")->required();
    iso->add_option("--flip", flip, "indices into the modulus-sorted non-real zeros of b");
    iso->add_option("--alpha", alpha, "extra phase e^{i alpha}");
    iso->add_option("--radius", radius, "search bound for zeros of b (default 40/gamma)");
    iso->add_option("--n", n, "node count of the result (default: as input)");
    iso->add_option("--out", out, "potential file")->required();

    auto* shiftz = app.add_subcommand("shift-zero", "move or remove one zero of b");
    shiftz->add_option("--potential", potential, "potential file")->required();
    shiftz->add_option("--from", zfrom, "re im of the zero")->expected(2)->required();
    auto* to_opt = shiftz->add_option("--to", zto, "re im of the target")->expected(2);
    auto* rm_opt = shiftz->add_flag("--remove", remove, "remove the zero");
    to_opt->excludes(rm_opt);
    shiftz->add_option("--n", n, "node count of the result (default: as input)");
    shiftz->add_option("--out", out, "potential file")->required();

    auto* shiftr = app.add_subcommand("shift-resonance", "move a symmetric resonance pair");
    shiftr->add_option("--potential", potential, "potential file")->required();
    shiftr->add_option("--from", zfrom, "re im of the resonance")->expected(2)->required();
    shiftr->add_option("--to", zto, "re im of the target")->expected(2)->required();
    shiftr->add_option("--radius", radius, "truncation radius for b (default 60/gamma)");
    shiftr->add_option("--kmax", kmax, "half width of the output grid (default 10/gamma)");
    shiftr->add_option("--nk", nk, "node count (default 401)");
    shiftr->add_option("--out", out, "scattering file")->required();

    auto* symmetry = app.add_subcommand("symmetry", "symmetry transforms and class checks");
    symmetry->add_option("--potential", potential, "potential file")->required();
    symmetry->add_option("--transform", kind, "reflect, conjugate, phase, shift, modulate")
        ->check(CLI::IsMember({"reflect", "conjugate", "phase", "shift", "modulate"}));
    symmetry->add_option("--param", param, "alpha or s");
    symmetry->add_option("--tol", sym_tol, "classification tolerance");
    symmetry->add_option("--kmax", kmax, "k range of the b class check (default 10/gamma)");
    symmetry->add_option("--nk", nk, "node count (default 256)");
    symmetry->add_option("--out", out, "transformed potential file");
    symmetry->add_option("--report", out2, "JSON report file (default: stdout)");

    auto* canonical = app.add_subcommand("canonical", "canonical system conversions");
    canonical->add_option("verb", verb, "to-hamiltonian, to-potential, normalize, scattering")
        ->required()
        ->check(CLI::IsMember({"to-hamiltonian", "to-potential", "normalize", "scattering"}));
    canonical->add_option("--potential", potential, "potential file (to-hamiltonian)");
    canonical->add_option("--in", in, "Hamiltonian file");
    canonical->add_option("--kmax", kmax, "k grid for scattering (default 10)");
    canonical->add_option("--nk", nk, "node count (default 401)");
    canonical->add_option("--out", out, "output file")->required();

    auto* aa = app.add_subcommand("action-angle", "action and angle profiles");
    aa->add_option("--potential", potential, "potential file")->required();
    aa->add_option("--kmax", kmax, "half width of the k grid (default 10/gamma)");
    aa->add_option("--nk", nk, "node count (default 401)");
    aa->add_option("--t", t, "time added as 4 k^2 t to the angle");
    aa->add_option("--radius", radius, "zero search bound (default 40/gamma)");
    aa->add_option("--action-out", out, "(1/pi) log|a|");
    aa->add_option("--action-series-out", out2, "resonance series for the action");
    aa->add_option("--angle-out", out3, "angle from the zero data");
    aa->add_option("--angle-direct-out", out4, "unwrapped arg b");

    auto* nls = app.add_subcommand("nls", "defocusing NLS flow in scattering space");
    nls->add_option("--potential", potential, "potential file")->required();
    nls->add_option("--t", t, "time")->required();
    nls->add_option("--out", out, "potential file of q_t on its window")->required();

    auto* plot = app.add_subcommand("plotdata", "two-column x y data");
    plot->add_option("--potential", potential, "potential file");
    plot->add_option("--in", in, "scattering file");
    plot->add_option("--hamiltonian", xi_path, "Hamiltonian file");
    plot->add_option("--quantity", quantity,
                     "re, im, abs (potential); abs_a, abs_b, arg_a, arg_b, abs_r, unitarity "
                     "(scattering); h11, h12, h22, det (Hamiltonian)")
        ->required();
    plot->add_option("--out", out, "plot file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    try {
        for (const auto& o : {out, out2, out3, out4})
            require_output(o);
        Meta meta;
        meta.add("command", app.get_subcommands().front()->get_name());

        if (*forward) {
            Pot q;
            load(q, potential);
            double g = ds_potential_gamma(q.get());
            if (kmax == 0.0)
                kmax = 96.0 / g;
            if (nk == 0)
                nk = 2 * static_cast<int>(std::ceil(kmax / (M_PI / (32.0 * g)))) + 1;
            Table tab;
            check(ds_forward(q.get(), kmax, nk, tol, tab.out()));
            meta.add("potential", potential);
            meta.add("kmax", kmax);
            meta.add("nk", std::to_string(nk));
            meta.add("ode_tol", tol);
            write_table(tab, out, meta);
        } else if (*resonances) {
            Pot q;
            load(q, potential);
            double g = ds_potential_gamma(q.get());
            Zeros z;
            meta.add("potential", potential);
            if (of == "a") {
                if (!rect.empty()) {
                    check(ds_resonances(q.get(), rect.data(), z.out()));
                    meta.add("rect", fmt(rect[0]) + " " + fmt(rect[1]) + " " + fmt(rect[2]) + " " +
                                         fmt(rect[3]));
                } else {
                    check(ds_resonances(q.get(), nullptr, z.out()));
                    meta.add("rect", "default");
                }
            } else {
                if (radius == 0.0)
                    radius = 40.0 / g;
                check(ds_b_zeros(q.get(), radius, z.out()));
                meta.add("radius", radius);
                if (!xi_path.empty()) {
                    require_output(xi_path);
                    Xi xi;
                    check(ds_xi_of(q.get(), radius, xi.out()));
                    check(ds_xi_write(xi.get(), xi_path.c_str()));
                }
            }
            meta.add("of", of);
            check(ds_zeros_write(z.get(), out.c_str()));
            meta.write(out);
        } else if (*invert) {
            require_input(in);
            Table tab;
            check(ds_table_read(in.c_str(), tab.out()));
            if (n == 0)
                n = 512;
            Pot q;
            double cond = 0.0;
            check(ds_invert(tab.get(), side.c_str(), from.c_str(), gamma, n, q.out(), &cond));
            meta.add("in", in);
            meta.add("side", side);
            meta.add("from", from);
            meta.add("gamma", gamma);
            meta.add("n", std::to_string(n));
            meta.add("condition", cond);
            write_potential(q, out, meta);
        } else if (*afromb) {
            require_input(in);
            Table tab, res;
            check(ds_table_read(in.c_str(), tab.out()));
            check(ds_a_from_b(tab.get(), res.out()));
            meta.add("in", in);
            meta.add("padding", "16");
            write_table(res, out, meta);
        } else if (*bfroma) {
            Pot q;
            load(q, potential);
            require_input(xi_path);
            Xi xi;
            check(ds_xi_read(xi_path.c_str(), xi.out()));
            double g = ds_potential_gamma(q.get());
            if (radius == 0.0)
                radius = 60.0 / g;
            if (kmax == 0.0)
                kmax = 10.0 / g;
            if (nk == 0)
                nk = 401;
            Table tab;
            double conv = 0.0;
            check(ds_b_from_a(q.get(), xi.get(), radius, kmax, nk, tab.out(), &conv));
            meta.add("potential", potential);
            meta.add("xi", xi_path);
            meta.add("radius", radius);
            meta.add("convergence_estimate", conv);
            meta.add("kmax", kmax);
            meta.add("nk", std::to_string(nk));
            write_table(tab, out, meta);
        } else if (*iso) {
            Pot q, r;
            load(q, potential);
            double g = ds_potential_gamma(q.get());
            if (radius == 0.0)
                radius = 40.0 / g;
            if (n == 0)
                n = ds_potential_size(q.get());
            check(ds_iso(q.get(), flip.data(), static_cast<int>(flip.size()), alpha, radius, n,
                         r.out()));
            std::ostringstream fl;
            for (int f : flip)
                fl << f << ' ';
            meta.add("potential", potential);
            meta.add("flip", fl.str());
            meta.add("alpha", alpha);
            meta.add("radius", radius);
            meta.add("n", std::to_string(n));
            write_potential(r, out, meta);
        } else if (*shiftz) {
            if (!remove && zto.empty())
                throw Failure{1, "shift-zero needs --to or --remove"};
            Pot q, r;
            load(q, potential);
            if (n == 0)
                n = ds_potential_size(q.get());
            auto [fr, fi] = parse_complex(zfrom, "--from");
            double tr = 0.0, ti = 0.0;
            if (!remove)
                std::tie(tr, ti) = parse_complex(zto, "--to");
            check(ds_shift_zero(q.get(), fr, fi, remove, tr, ti, n, r.out()));
            meta.add("potential", potential);
            meta.add("from", fmt(fr) + " " + fmt(fi));
            meta.add("to", remove ? std::string("removed") : fmt(tr) + " " + fmt(ti));
            meta.add("n", std::to_string(n));
            write_potential(r, out, meta);
        } else if (*shiftr) {
            Pot q;
            load(q, potential);
            double g = ds_potential_gamma(q.get());
            if (radius == 0.0)
                radius = 60.0 / g;
            if (kmax == 0.0)
                kmax = 10.0 / g;
            if (nk == 0)
                nk = 401;
            auto [fr, fi] = parse_complex(zfrom, "--from");
            auto [tr, ti] = parse_complex(zto, "--to");
            Table tab;
            check(ds_shift_resonance(q.get(), fr, fi, tr, ti, radius, kmax, nk, tab.out()));
            meta.add("potential", potential);
            meta.add("from", fmt(fr) + " " + fmt(fi));
            meta.add("to", fmt(tr) + " " + fmt(ti));
            meta.add("radius", radius);
            meta.add("kmax", kmax);
            meta.add("nk", std::to_string(nk));
            write_table(tab, out, meta);
        } else if (*symmetry) {
            Pot q, p;
            load(q, potential);
            const ds_potential* target = q.get();
            if (!kind.empty()) {
                check(ds_potential_transform(q.get(), kind.c_str(), param, p.out()));
                target = p.get();
            }
            double g = ds_potential_gamma(target);
            if (kmax == 0.0)
                kmax = 10.0 / g;
            if (nk == 0)
                nk = 256;
            int even = 0, odd = 0, real = 0;
            check(ds_potential_classify(target, sym_tol, &even, &odd, &real));
            double be = 0.0, bo = 0.0, br = 0.0;
            check(ds_b_class(target, kmax, nk, &be, &bo, &br));
            std::ostringstream rep;
            rep << "{\"even\": " << (even ? "true" : "false") << ", \"odd\": "
                << (odd ? "true" : "false") << ", \"real\": " << (real ? "true" : "false")
                << ", \"tolerance\": " << fmt(sym_tol) << ", \"b_even_residual\": " << fmt(be)
                << ", \"b_odd_residual\": " << fmt(bo) << ", \"b_real_residual\": " << fmt(br)
                << "}\n";
            meta.add("potential", potential);
            meta.add("transform", kind.empty() ? std::string("none") : kind);
            meta.add("param", param);
            meta.add("tolerance", sym_tol);
            meta.add("kmax", kmax);
            meta.add("nk", std::to_string(nk));
            if (!out.empty()) {
                check(ds_potential_write(target, out.c_str()));
                meta.write(out);
            }
            if (!out2.empty()) {
                FILE* f = std::fopen(out2.c_str(), "w");
                if (!f)
                    throw Failure{2, "cannot open " + out2};
                std::fputs(rep.str().c_str(), f);
                std::fclose(f);
                meta.write(out2);
            } else {
                std::fputs(rep.str().c_str(), stdout);
            }
        } else if (*canonical) {
            meta.add("verb", verb);
            if (verb == "to-hamiltonian") {
                Pot q;
                load(q, potential);
                Ham h;
                check(ds_hamiltonian_of(q.get(), h.out()));
                check(ds_hamiltonian_write(h.get(), out.c_str()));
                meta.add("potential", potential);
                meta.add("substeps", "8");
                meta.write(out);
            } else {
                require_input(in);
                Ham h;
                check(ds_hamiltonian_read(in.c_str(), h.out()));
                meta.add("in", in);
                if (verb == "to-potential") {
                    Pot q;
                    check(ds_hamiltonian_potential(h.get(), q.out()));
                    write_potential(q, out, meta);
                } else if (verb == "normalize") {
                    Ham h0;
                    double C[3] = {0, 0, 0};
                    double err = 0.0;
                    check(ds_hamiltonian_normalize(h.get(), h0.out(), C, &err));
                    check(ds_hamiltonian_write(h0.get(), out.c_str()));
                    meta.add("c11", C[0]);
                    meta.add("c12", C[1]);
                    meta.add("c22", C[2]);
                    meta.add("reassembly_error", err);
                    meta.write(out);
                } else {
                    if (kmax == 0.0)
                        kmax = 10.0;
                    if (nk == 0)
                        nk = 401;
                    Table tab;
                    check(ds_hamiltonian_scattering(h.get(), kmax, nk, tab.out()));
                    meta.add("kmax", kmax);
                    meta.add("nk", std::to_string(nk));
                    write_table(tab, out, meta);
                }
            }
        } else if (*aa) {
            if (out.empty() && out2.empty() && out3.empty() && out4.empty())
                throw Failure{1, "action-angle needs at least one output"};
            Pot q;
            load(q, potential);
            double g = ds_potential_gamma(q.get());
            if (kmax == 0.0)
                kmax = 10.0 / g;
            if (nk == 0)
                nk = 401;
            if (radius == 0.0)
                radius = 40.0 / g;
            std::vector<double> k(nk), v1(nk), v2(nk);
            meta.add("potential", potential);
            meta.add("kmax", kmax);
            meta.add("nk", std::to_string(nk));
            meta.add("radius", radius);
            meta.add("t", t);
            if (!out.empty() || !out2.empty()) {
                double tail = 0.0;
                check(ds_action(q.get(), kmax, nk, radius, k.data(), v1.data(), v2.data(), &tail));
                meta.add("series_tail_estimate", tail);
                if (!out.empty()) {
                    check(ds_write_columns(out.c_str(), nk, k.data(), v1.data()));
                    meta.write(out);
                }
                if (!out2.empty()) {
                    check(ds_write_columns(out2.c_str(), nk, k.data(), v2.data()));
                    meta.write(out2);
                }
            }
            if (!out3.empty() || !out4.empty()) {
                std::vector<int> valid(nk);
                check(ds_angle(q.get(), kmax, nk, t, radius, k.data(), v1.data(), v2.data(),
                               valid.data()));
                if (!out3.empty()) {
                    check(ds_write_columns(out3.c_str(), nk, k.data(), v1.data()));
                    meta.write(out3);
                }
                if (!out4.empty()) {
                    check(ds_write_columns(out4.c_str(), nk, k.data(), v2.data()));
                    meta.write(out4);
                }
            }
        } else if (*nls) {
            Pot q, r;
            load(q, potential);
            double lo = 0.0, hi = 0.0, tail = 0.0;
            check(ds_evolve(q.get(), t, r.out(), &lo, &hi, &tail));
            meta.add("potential", potential);
            meta.add("t", t);
            meta.add("window", fmt(lo) + " " + fmt(hi));
            meta.add("kernel_tail_ratio", tail);
            meta.add("window_threshold", 1e-6);
            write_potential(r, out, meta);
        } else if (*plot) {
            int sources = !potential.empty() + !in.empty() + !xi_path.empty();
            if (sources != 1)
                throw Failure{1, "plotdata needs exactly one of --potential, --in, --hamiltonian"};
            std::vector<double> x, y;
            if (!potential.empty()) {
                Pot q;
                load(q, potential);
                x = node_values(q, 0);
                auto re = node_values(q, 1), im = node_values(q, 2);
                for (std::size_t j = 0; j < x.size(); ++j) {
                    if (quantity == "re")
                        y.push_back(re[j]);
                    else if (quantity == "im")
                        y.push_back(im[j]);
                    else if (quantity == "abs")
                        y.push_back(std::hypot(re[j], im[j]));
                    else
                        throw Failure{1, "unknown potential quantity: " + quantity};
                }
            } else if (!in.empty()) {
                require_input(in);
                Table tab;
                check(ds_table_read(in.c_str(), tab.out()));
                int m = ds_table_size(tab.get());
                std::vector<double> k(m), ar(m), ai(m), br(m), bi(m);
                check(ds_table_get(tab.get(), k.data(), ar.data(), ai.data(), br.data(), bi.data()));
                x = k;
                for (int j = 0; j < m; ++j) {
                    double am = std::hypot(ar[j], ai[j]), bm = std::hypot(br[j], bi[j]);
                    if (quantity == "abs_a")
                        y.push_back(am);
                    else if (quantity == "abs_b")
                        y.push_back(bm);
                    else if (quantity == "arg_a")
                        y.push_back(std::atan2(ai[j], ar[j]));
                    else if (quantity == "arg_b")
                        y.push_back(std::atan2(bi[j], br[j]));
                    else if (quantity == "abs_r")
                        y.push_back(bm / am);
                    else if (quantity == "unitarity")
                        y.push_back(am * am - bm * bm - 1.0);
                    else
                        throw Failure{1, "unknown scattering quantity: " + quantity};
                }
            } else {
                require_input(xi_path);
                Ham h;
                check(ds_hamiltonian_read(xi_path.c_str(), h.out()));
                int m = ds_hamiltonian_size(h.get());
                std::vector<double> hx(m), a(m), b(m), c(m);
                check(ds_hamiltonian_get(h.get(), hx.data(), a.data(), b.data(), c.data()));
                x = hx;
                for (int j = 0; j < m; ++j) {
                    if (quantity == "h11")
                        y.push_back(a[j]);
                    else if (quantity == "h12")
                        y.push_back(b[j]);
                    else if (quantity == "h22")
                        y.push_back(c[j]);
                    else if (quantity == "det")
                        y.push_back(a[j] * c[j] - b[j] * b[j]);
                    else
                        throw Failure{1, "unknown Hamiltonian quantity: " + quantity};
                }
            }
            check(ds_write_columns(out.c_str(), static_cast<int>(x.size()), x.data(), y.data()));
            meta.add("quantity", quantity);
            meta.write(out);
        }
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.code;
    }
    return 0;
}
