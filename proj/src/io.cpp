#include "dirac/io.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace dirac {

namespace {

using json = nlohmann::json;

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(ErrorKind::IO, "cannot open " + path + " for writing");
    return f;
}

void finish(std::ofstream& f, const std::string& path)
{
    f.flush();
    if (!f)
        throw Error(ErrorKind::IO, "write failed: " + path);
}

std::vector<std::string> read_lines(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::IO, "cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        lines.push_back(line);
    }
    if (lines.empty())
        throw Error(ErrorKind::IO, path + ": empty file");
    return lines;
}

// key=value pairs after the expected prefix of the header line.
std::map<std::string, std::string> header_fields(const std::string& line, const std::string& prefix,
                                                 const std::string& path)
{
    if (line.rfind(prefix, 0) != 0)
        throw Error(ErrorKind::IO, path + ": expected header '" + prefix + "'");
    std::map<std::string, std::string> out;
    std::istringstream in(line.substr(prefix.size()));
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::IO, path + ": malformed header field " + tok);
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

double to_double(const std::string& s, const std::string& path)
{
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::IO, path + ": not a number: " + s);
    }
}

int header_int(const std::map<std::string, std::string>& f, const std::string& key,
               const std::string& path)
{
    auto it = f.find(key);
    if (it == f.end())
        throw Error(ErrorKind::IO, path + ": header lacks " + key);
    double v = to_double(it->second, path);
    if (v != std::floor(v) || v < 0)
        throw Error(ErrorKind::IO, path + ": " + key + " must be a nonnegative integer");
    return static_cast<int>(v);
}

std::vector<double> row(const std::string& line, std::size_t cols, const std::string& path)
{
    std::istringstream in(line);
    std::vector<double> out;
    std::string tok;
    while (in >> tok)
        out.push_back(to_double(tok, path));
    if (out.size() != cols)
        throw Error(ErrorKind::IO, path + ": expected " + std::to_string(cols) + " columns in '" +
                                       line + "'");
    for (double v : out)
        if (!std::isfinite(v))
            throw Error(ErrorKind::IO, path + ": non-finite value");
    return out;
}

json read_json(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::IO, "cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::IO, path + ": " + e.what());
    }
}

void write_json(const std::string& path, const json& j)
{
    auto f = open_out(path);
    f << j.dump(2) << '\n';
    finish(f, path);
}

SpectralGrid uniform_view(const std::vector<double>& k, const std::vector<cplx>& v)
{
    int n = static_cast<int>(k.size());
    if (n < 2)
        throw Error(ErrorKind::Parameter, "scattering table: need at least 2 nodes");
    SpectralGrid g;
    g.k0 = k.front();
    g.dk = (k.back() - k.front()) / (n - 1);
    for (int j = 0; j < n; ++j)
        if (std::abs(k[j] - (g.k0 + j * g.dk)) > 1e-9 * std::max(1.0, std::abs(k[j])))
            throw Error(ErrorKind::Parameter, "scattering table: k grid is not uniform");
    g.values = v;
    return g;
}

}  // namespace

const char* tool_version() { return "dirac-scatter 1.0.0"; }

void write_potential(const std::string& path, const Potential& q)
{
    q.validate();
    auto f = open_out(path);
    f << "# dirac-potential v1 gamma=" << num(q.gamma) << " n=" << q.n() << '\n';
    auto v = q.node_values();
    for (int j = 0; j < q.n(); ++j)
        f << num(q.node(j)) << ' ' << num(v[j].real()) << ' ' << num(v[j].imag()) << '\n';
    finish(f, path);
}

Potential read_potential(const std::string& path)
{
    auto lines = read_lines(path);
    auto h = header_fields(lines[0], "# dirac-potential v1", path);
    if (!h.count("gamma"))
        throw Error(ErrorKind::IO, path + ": header lacks gamma");
    double gamma = to_double(h["gamma"], path);
    int n = header_int(h, "n", path);
    if (static_cast<int>(lines.size()) - 1 != n)
        throw Error(ErrorKind::IO, path + ": header says n=" + std::to_string(n) + ", found " +
                                       std::to_string(lines.size() - 1) + " rows");
    if (n < 2 || !(gamma > 0.0))
        throw Error(ErrorKind::IO, path + ": need n >= 2 and gamma > 0");
    Potential q;
    q.gamma = gamma;
    q.samples.resize(n);
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) {
        auto r = row(lines[j + 1], 3, path);
        x[j] = r[0];
        q.samples[j] = cplx(r[1], r[2]);
    }
    q.offset = x[0];
    double tol = 1e-9 * std::max(1.0, std::abs(x[0]) + gamma);
    for (int j = 0; j < n; ++j)
        if (std::abs(x[j] - q.node(j)) > tol)
            throw Error(ErrorKind::IO, path + ": x column is not the uniform grid of the header");
    return q;
}

SpectralGrid ScatteringTable::grid_a() const { return uniform_view(k, a); }
SpectralGrid ScatteringTable::grid_b() const { return uniform_view(k, b); }

void write_scattering(const std::string& path, const ScatteringTable& t)
{
    if (t.a.size() != t.k.size() || t.b.size() != t.k.size())
        throw Error(ErrorKind::Parameter, "scattering table: column sizes differ");
    auto f = open_out(path);
    f << "# dirac-scattering v1 nk=" << t.size() << '\n';
    for (int j = 0; j < t.size(); ++j)
        f << num(t.k[j]) << ' ' << num(t.a[j].real()) << ' ' << num(t.a[j].imag()) << ' '
          << num(t.b[j].real()) << ' ' << num(t.b[j].imag()) << '\n';
    finish(f, path);
}

ScatteringTable read_scattering(const std::string& path)
{
    auto lines = read_lines(path);
    auto h = header_fields(lines[0], "# dirac-scattering v1", path);
    int n = header_int(h, "nk", path);
    if (static_cast<int>(lines.size()) - 1 != n)
        throw Error(ErrorKind::IO, path + ": header says nk=" + std::to_string(n) + ", found " +
                                       std::to_string(lines.size() - 1) + " rows");
    ScatteringTable t;
    for (int j = 0; j < n; ++j) {
        auto r = row(lines[j + 1], 5, path);
        if (j > 0 && !(r[0] > t.k.back()))
            throw Error(ErrorKind::IO, path + ": k column must increase");
        t.k.push_back(r[0]);
        t.a.emplace_back(r[1], r[2]);
        t.b.emplace_back(r[3], r[4]);
    }
    return t;
}

void write_zeros(const std::string& path, const ZeroSet& z)
{
    json arr = json::array();
    for (const auto& e : z.zeros)
        arr.push_back({{"re", e.location.real()}, {"im", e.location.imag()}, {"mult", e.multiplicity}});
    write_json(path, arr);
}

ZeroSet read_zeros(const std::string& path)
{
    json j = read_json(path);
    if (!j.is_array())
        throw Error(ErrorKind::IO, path + ": expected a JSON array");
    ZeroSet z;
    try {
        for (const auto& e : j) {
            Zero zz;
            zz.location = cplx(e.at("re").get<double>(), e.at("im").get<double>());
            zz.multiplicity = e.at("mult").get<int>();
            if (zz.multiplicity < 1)
                throw Error(ErrorKind::IO, path + ": multiplicity must be positive");
            z.zeros.push_back(zz);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::IO, path + ": " + e.what());
    }
    return z;
}

void write_xi(const std::string& path, const XiSequence& xi)
{
    json j;
    if (xi.defined) {
        j["xi0_re"] = xi.xi0.real();
        j["xi0_im"] = xi.xi0.imag();
    } else {
        j["xi0_re"] = nullptr;
        j["xi0_im"] = nullptr;
    }
    j["p"] = xi.p;
    j["signs"] = xi.signs;
    json zs = json::array();
    for (cplx z : xi.zeros)
        zs.push_back({{"re", z.real()}, {"im", z.imag()}});
    j["zeros"] = zs;
    j["realness_tol"] = xi.realness_tol;
    write_json(path, j);
}

XiSequence read_xi(const std::string& path)
{
    json j = read_json(path);
    XiSequence xi;
    try {
        if (j.at("xi0_re").is_null() || j.at("xi0_im").is_null()) {
            xi.defined = false;
        } else {
            xi.defined = true;
            xi.xi0 = cplx(j.at("xi0_re").get<double>(), j.at("xi0_im").get<double>());
            if (std::abs(std::abs(xi.xi0) - 1.0) > 1e-9)
                throw Error(ErrorKind::IO, path + ": |xi0| must be 1");
        }
        xi.p = j.at("p").get<int>();
        xi.signs = j.at("signs").get<std::vector<int>>();
        for (int s : xi.signs)
            if (s < -1 || s > 1)
                throw Error(ErrorKind::IO, path + ": signs must be -1, 0 or 1");
        if (j.contains("zeros"))
            for (const auto& e : j["zeros"])
                xi.zeros.emplace_back(e.at("re").get<double>(), e.at("im").get<double>());
        if (j.contains("realness_tol"))
            xi.realness_tol = j["realness_tol"].get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::IO, path + ": " + e.what());
    }
    if (!xi.zeros.empty() && xi.zeros.size() != xi.signs.size())
        throw Error(ErrorKind::IO, path + ": zeros and signs differ in length");
    return xi;
}

void write_hamiltonian(const std::string& path, const Hamiltonian& h)
{
    h.validate();
    bool unit_det = true;
    for (int j = 0; j < h.n(); ++j)
        unit_det = unit_det && std::abs(h.det(j) - 1.0) <= 1e-12;
    auto f = open_out(path);
    f << "# canonical-hamiltonian v1 n=" << h.n() << '\n';
    for (int j = 0; j < h.n(); ++j) {
        f << num(h.x[j]) << ' ' << num(h.h11[j]) << ' ' << num(h.h12[j]);
        if (!unit_det)
            f << ' ' << num(h.h22[j]);
        f << '\n';
    }
    finish(f, path);
}

Hamiltonian read_hamiltonian(const std::string& path)
{
    auto lines = read_lines(path);
    auto hd = header_fields(lines[0], "# canonical-hamiltonian v1", path);
    int n = header_int(hd, "n", path);
    if (static_cast<int>(lines.size()) - 1 != n)
        throw Error(ErrorKind::IO, path + ": header says n=" + std::to_string(n) + ", found " +
                                       std::to_string(lines.size() - 1) + " rows");
    if (n < 1)
        throw Error(ErrorKind::IO, path + ": no rows");
    std::size_t cols = 0;
    {
        std::istringstream in(lines[1]);
        std::string tok;
        while (in >> tok)
            ++cols;
    }
    if (cols != 3 && cols != 4)
        throw Error(ErrorKind::IO, path + ": expected 3 or 4 columns");
    Hamiltonian h;
    for (int j = 0; j < n; ++j) {
        auto r = row(lines[j + 1], cols, path);
        h.x.push_back(r[0]);
        h.h11.push_back(r[1]);
        h.h12.push_back(r[2]);
        if (cols == 4) {
            h.h22.push_back(r[3]);
        } else {
            if (!(r[1] > 0.0))
                throw Error(ErrorKind::IO, path + ": p must be positive");
            h.h22.push_back((1.0 + r[2] * r[2]) / r[1]);
        }
    }
    try {
        h.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::IO, path + ": " + e.what());
    }
    h.normalized = h.is_normalized();
    return h;
}

void write_columns(const std::string& path, const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size())
        throw Error(ErrorKind::Parameter, "plot data: column sizes differ");
    auto f = open_out(path);
    for (std::size_t i = 0; i < x.size(); ++i)
        f << num(x[i]) << ' ' << num(y[i]) << '\n';
    finish(f, path);
}

void write_meta(const std::string& path, const std::map<std::string, std::string>& entries)
{
    json j;
    for (const auto& [k, v] : entries)
        j[k] = v;
    j["tool"] = tool_version();
    j["threads"] = std::to_string(thread_count());
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;
    write_json(path + ".meta", j);
}

}  // namespace dirac
