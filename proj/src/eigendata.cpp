#include "hqe/eigendata.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "hqe/core.hpp"
#include "hqe/io.hpp"

namespace hqe {

namespace {

constexpr const char* kFormat = "hqe-eigendata-csv/1";

double parse_number(const std::string& tok, const char* what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE)
        throw FormatError(std::string("eigendata: bad number in ") + what + ": '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    return out;
}

}  // namespace

void validate(const EigenData& d) {
    const Eigen::Index n = d.n_mesh(), m = d.n_modes();
    if (d.y.size() != n || d.weight.size() != n || d.sheet.size() != n)
        throw FormatError("eigendata: mesh columns differ in length");
    if (d.eigenvectors.rows() != n || d.eigenvectors.cols() != m)
        throw FormatError("eigendata: eigenvector matrix has the wrong shape");
    if (static_cast<Eigen::Index>(d.residuals.size()) != m) throw FormatError("eigendata: one residual per mode needed");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(d.weight[i] > 0) || !std::isfinite(d.weight[i])) throw FormatError("eigendata: weights must be positive");
        if (std::hypot(d.x[i], d.y[i]) >= 1.0 && d.surface_id.rfind("torus", 0) != 0)
            throw FormatError("eigendata: mesh point outside the disc");
    }
    for (Eigen::Index j = 1; j < m; ++j)
        if (d.eigenvalues[j] < d.eigenvalues[j - 1]) throw FormatError("eigendata: eigenvalues must ascend");
    const Eigen::MatrixXd gram = d.eigenvectors.transpose() * d.weight.asDiagonal() * d.eigenvectors;
    const double dev = (gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
    if (m > 0 && !(dev <= d.ortho_tol)) {
        std::ostringstream os;
        os << "eigendata: Gram deviation " << dev << " exceeds " << d.ortho_tol;
        throw OrthonormalityViolation(os.str());
    }
    for (Eigen::Index j = 0; j < m; ++j)
        if (!(d.residuals[j] <= d.residual_tol)) {
            std::ostringstream os;
            os << "eigendata: residual of mode " << j << " is " << d.residuals[j] << " > " << d.residual_tol;
            throw ResidualViolation(os.str());
        }
}

std::string to_csv(const EigenData& d) {
    nlohmann::json header;
    header["format"] = kFormat;
    header["surface_id"] = d.surface_id;
    header["n_mesh"] = d.n_mesh();
    header["n_modes"] = d.n_modes();
    header["ortho_tol"] = format_double(d.ortho_tol);
    header["residual_tol"] = format_double(d.residual_tol);
    std::vector<std::string> res;
    for (double r : d.residuals) res.push_back(format_double(r));
    header["residuals"] = res;
    std::string out = header.dump() + "\n#mesh\nx,y,weight,sheet\n";
    for (Eigen::Index i = 0; i < d.n_mesh(); ++i)
        out += format_double(d.x[i]) + "," + format_double(d.y[i]) + "," + format_double(d.weight[i]) + "," +
               std::to_string(d.sheet[i]) + "\n";
    out += "#eigenvalues\n";
    for (Eigen::Index j = 0; j < d.n_modes(); ++j) out += format_double(d.eigenvalues[j]) + "\n";
    out += "#eigenvectors\n";
    for (Eigen::Index j = 0; j < d.n_modes(); ++j) {
        for (Eigen::Index i = 0; i < d.n_mesh(); ++i) {
            if (i) out += ',';
            out += format_double(d.eigenvectors(i, j));
        }
        out += '\n';
    }
    return out;
}

EigenData parse_eigendata(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw FormatError("eigendata: empty file");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("eigendata: header is not JSON: ") + e.what());
    }
    EigenData d;
    Eigen::Index n = 0, m = 0;
    try {
        if (header.at("format").get<std::string>() != kFormat) throw FormatError("eigendata: unknown format tag");
        d.surface_id = header.at("surface_id").get<std::string>();
        n = header.at("n_mesh").get<Eigen::Index>();
        m = header.at("n_modes").get<Eigen::Index>();
        d.ortho_tol = parse_number(header.at("ortho_tol").get<std::string>(), "ortho_tol");
        d.residual_tol = parse_number(header.at("residual_tol").get<std::string>(), "residual_tol");
        for (const auto& r : header.at("residuals")) d.residuals.push_back(parse_number(r.get<std::string>(), "residuals"));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("eigendata: bad header: ") + e.what());
    }
    if (n < 0 || m < 0) throw FormatError("eigendata: negative sizes");
    auto expect = [&](const char* tag) {
        if (!std::getline(in, line) || line != tag) throw FormatError(std::string("eigendata: expected ") + tag);
    };
    expect("#mesh");
    expect("x,y,weight,sheet");
    d.x.resize(n);
    d.y.resize(n);
    d.weight.resize(n);
    d.sheet.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw FormatError("eigendata: mesh section truncated");
        const auto tok = split(line);
        if (tok.size() != 4) throw FormatError("eigendata: mesh rows need 4 fields");
        d.x[i] = parse_number(tok[0], "mesh");
        d.y[i] = parse_number(tok[1], "mesh");
        d.weight[i] = parse_number(tok[2], "mesh");
        d.sheet[i] = static_cast<int>(parse_number(tok[3], "mesh"));
    }
    expect("#eigenvalues");
    d.eigenvalues.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        if (!std::getline(in, line)) throw FormatError("eigendata: eigenvalue section truncated");
        d.eigenvalues[j] = parse_number(line, "eigenvalues");
    }
    expect("#eigenvectors");
    d.eigenvectors.resize(n, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        if (!std::getline(in, line)) throw FormatError("eigendata: eigenvector section truncated");
        const auto tok = split(line);
        if (static_cast<Eigen::Index>(tok.size()) != n) throw FormatError("eigendata: eigenvector row has wrong length");
        for (Eigen::Index i = 0; i < n; ++i) d.eigenvectors(i, j) = parse_number(tok[i], "eigenvectors");
    }
    while (std::getline(in, line))
        if (!line.empty()) throw FormatError("eigendata: trailing content");
    validate(d);
    return d;
}

void export_eigendata(const EigenData& data, const std::string& path) {
    validate(data);
    atomic_write(path, to_csv(data));
}

EigenData ingest_eigendata(const std::string& path) { return parse_eigendata(read_file(path)); }

}  // namespace hqe
