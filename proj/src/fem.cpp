#include "hqe/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "hqe/io.hpp"
#include "hqe/rng.hpp"

namespace hqe {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

// Point at fraction f of the geodesic from p to q.
cplx geodesic_point(cplx p, cplx q, double f) {
    const GroupElement tp = translation_to(DiscPoint(p));
    const cplx local = tp.inverse().apply(q);
    const double r = std::abs(local);
    if (r == 0.0) return p;
    const double d = 2.0 * std::atanh(r);
    return tp.apply(std::tanh(0.5 * f * d) * local / r);
}

std::string fixed(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

// Collapse snapped nodes into degrees of freedom and emit the triangle list.
void finish_mesh(SurfaceMesh& mesh, UnionFind& uf, const std::vector<cplx>& node_pos, const std::vector<int>& node_sheet,
                 const std::vector<std::array<std::size_t, 3>>& tris) {
    std::map<std::size_t, int> dof_of_root;
    std::vector<int> dof(node_pos.size());
    for (std::size_t i = 0; i < node_pos.size(); ++i) {
        const std::size_t root = uf.find(i);
        auto it = dof_of_root.find(root);
        if (it == dof_of_root.end()) {
            it = dof_of_root.emplace(root, mesh.n_dof++).first;
            mesh.dof_point.push_back(node_pos[i]);
            mesh.dof_sheet.push_back(node_sheet[i]);
        }
        dof[i] = it->second;
    }
    for (const auto& t : tris) {
        mesh.triangles.push_back({dof[t[0]], dof[t[1]], dof[t[2]]});
        mesh.corners.push_back({node_pos[t[0]], node_pos[t[1]], node_pos[t[2]]});
    }
}

}  // namespace

SurfaceMesh build_surface_mesh(const CoverSurface& surface, double h) {
    if (!(h >= 0.01 && h <= 0.2)) throw DomainError("build_surface_mesh: h must lie in [0.01, 0.2]");
    const DirichletDomain dom = dirichlet_domain(surface.base);
    const int nv = static_cast<int>(dom.vertices.size());
    double longest = dom.circumradius;
    for (int k = 0; k < nv; ++k)
        longest = std::max(longest, hyp_distance(DiscPoint(dom.vertices[k]), DiscPoint(dom.vertices[(k + 1) % nv])));
    const int n = static_cast<int>(std::ceil(longest / h));

    // local numbering on one sheet: centre, rays, then triangle interiors
    // (including the side nodes with i + j = n)
    std::vector<cplx> local_pos{0.0};
    auto ray_index = [&](int k, int i) { return 1 + (k % nv) * n + (i - 1); };
    for (int k = 0; k < nv; ++k)
        for (int i = 1; i <= n; ++i) local_pos.push_back(geodesic_point(0.0, dom.vertices[k], double(i) / n));
    std::vector<std::map<std::pair<int, int>, int>> interior(nv);
    for (int k = 0; k < nv; ++k)
        for (int i = 1; i < n; ++i)
            for (int j = 1; i + j <= n; ++j) {
                const int m = i + j;
                const cplx q = geodesic_point(dom.vertices[k], dom.vertices[(k + 1) % nv], double(j) / m);
                interior[k][{i, j}] = static_cast<int>(local_pos.size());
                local_pos.push_back(geodesic_point(0.0, q, double(m) / n));
            }
    auto node = [&](int k, int i, int j) {
        if (i == 0 && j == 0) return 0;
        if (j == 0) return ray_index(k, i);
        if (i == 0) return ray_index(k + 1, j);
        return interior[k].at({i, j});
    };
    const std::size_t L = local_pos.size();
    const int deg = surface.degree;

    std::vector<cplx> node_pos;
    std::vector<int> node_sheet;
    for (int s = 0; s < deg; ++s)
        for (std::size_t i = 0; i < L; ++i) {
            node_pos.push_back(local_pos[i]);
            node_sheet.push_back(s);
        }
    std::vector<std::array<std::size_t, 3>> tris;
    for (int s = 0; s < deg; ++s)
        for (int k = 0; k < nv; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; i + j < n; ++j) {
                    const std::size_t off = s * L;
                    tris.push_back({off + node(k, i, j), off + node(k, i + 1, j), off + node(k, i, j + 1)});
                    if (i + j + 2 <= n)
                        tris.push_back({off + node(k, i + 1, j), off + node(k, i + 1, j + 1), off + node(k, i, j + 1)});
                }

    UnionFind uf(node_pos.size());
    for (int s = 0; s < deg; ++s)
        for (int k = 0; k < nv; ++k) {
            const GroupElement back = dom.side_elements[k].inverse();
            const int p = dom.partner[k];
            const int t = surface.act(s, dom.side_words[k]);
            for (int j = 0; j <= n; ++j) {
                const int here = node(k, n - j, j);
                const DiscPoint image(back.apply(local_pos[here]));
                int best = -1;
                double best_d = infinity;
                for (int jj = 0; jj <= n; ++jj) {
                    const int there = node(p, n - jj, jj);
                    const double d = hyp_distance(image, DiscPoint(local_pos[there]));
                    if (d < best_d) {
                        best_d = d;
                        best = there;
                    }
                }
                if (best_d > 0.3 * h) {
                    std::ostringstream os;
                    os << "build_surface_mesh: side " << k << " node " << j << " has no partner within 0.3h ("
                       << best_d << ")";
                    throw MeshPairingFailure(os.str());
                }
                uf.unite(s * L + here, t * L + best);
            }
        }
    // every vertex cycle must close up with total angle 2 pi
    std::map<std::size_t, double> cycle_angle;
    for (int s = 0; s < deg; ++s)
        for (int k = 0; k < nv; ++k) cycle_angle[uf.find(s * L + ray_index(k, n))] += dom.angles[k];
    for (const auto& [root, angle] : cycle_angle)
        if (std::abs(angle - two_pi) > 1e-6) {
            std::ostringstream os;
            os << "build_surface_mesh: vertex cycle with angle sum " << angle;
            throw MeshPairingFailure(os.str());
        }

    SurfaceMesh mesh;
    mesh.surface_id = surface.id() + "/h=" + fixed(h);
    mesh.hyperbolic = true;
    mesh.h = h;
    finish_mesh(mesh, uf, node_pos, node_sheet, tris);
    return mesh;
}

SurfaceMesh build_torus_mesh(double h) {
    if (!(h >= 0.01 && h <= 0.2)) throw DomainError("build_torus_mesh: h must lie in [0.01, 0.2]");
    const int n = static_cast<int>(std::lround(1.0 / h));
    auto id = [n](int i, int j) { return static_cast<std::size_t>(i * (n + 1) + j); };
    std::vector<cplx> pos((n + 1) * (n + 1));
    std::vector<int> sheet(pos.size(), 0);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) pos[id(i, j)] = cplx(double(i) / n, double(j) / n);
    std::vector<std::array<std::size_t, 3>> tris;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    UnionFind uf(pos.size());
    const double hh = 1.0 / n;
    auto snap = [&](std::size_t a, cplx shift, bool along_x) {
        const cplx target = pos[a] - shift;
        for (int m = 0; m <= n; ++m) {
            const std::size_t b = along_x ? id(0, m) : id(m, 0);
            if (std::abs(pos[b] - target) < 0.3 * hh) {
                uf.unite(a, b);
                return;
            }
        }
        throw MeshPairingFailure("build_torus_mesh: unmatched boundary node");
    };
    for (int m = 0; m <= n; ++m) {
        snap(id(n, m), cplx(1.0, 0.0), true);
        snap(id(m, n), cplx(0.0, 1.0), false);
    }
    double corner_angle = 0.0;
    for (auto c : {id(0, 0), id(n, 0), id(0, n), id(n, n)})
        if (uf.find(c) == uf.find(id(0, 0))) corner_angle += 0.5 * pi;
    if (std::abs(corner_angle - two_pi) > 1e-12) throw MeshPairingFailure("build_torus_mesh: corner cycle is open");
    SurfaceMesh mesh;
    mesh.surface_id = "torus/h=" + fixed(h);
    mesh.hyperbolic = false;
    mesh.h = h;
    finish_mesh(mesh, uf, pos, sheet, tris);
    return mesh;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

void assemble(const SurfaceMesh& mesh, SpMat& K, Eigen::VectorXd& M) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(mesh.triangles.size() * 9);
    M = Eigen::VectorXd::Zero(mesh.n_dof);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& c = mesh.corners[t];
        const auto& d = mesh.triangles[t];
        double b[3], g[3];
        for (int i = 0; i < 3; ++i) {
            const cplx pj = c[(i + 1) % 3], pk = c[(i + 2) % 3];
            b[i] = pj.imag() - pk.imag();
            g[i] = pk.real() - pj.real();
        }
        const double area = 0.5 * std::abs((c[1] - c[0]).real() * (c[2] - c[0]).imag() -
                                           (c[1] - c[0]).imag() * (c[2] - c[0]).real());
        if (!(area > 0)) throw MeshPairingFailure("assemble: degenerate triangle");
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) trip.emplace_back(d[i], d[j], (b[i] * b[j] + g[i] * g[j]) / (4.0 * area));
            double factor = 1.0;
            if (mesh.hyperbolic) {
                const double omr2 = 1.0 - std::norm(c[i]);
                factor = 4.0 / (omr2 * omr2);
            }
            M[d[i]] += area / 3.0 * factor;
        }
    }
    K.resize(mesh.n_dof, mesh.n_dof);
    K.setFromTriplets(trip.begin(), trip.end());
}

// M-orthonormalise the columns of V against the first `cols` columns of Q
// and among themselves; dependent columns are redrawn.
void m_orthonormalize(Eigen::MatrixXd& V, const Eigen::MatrixXd& Q, Eigen::Index cols, const Eigen::VectorXd& M,
                      Rng& rng) {
    for (Eigen::Index c = 0; c < V.cols(); ++c) {
        for (int redraw = 0; redraw < 5; ++redraw) {
            for (int pass = 0; pass < 2; ++pass) {
                if (cols > 0) {
                    const Eigen::VectorXd coef = Q.leftCols(cols).transpose() * M.cwiseProduct(V.col(c));
                    V.col(c) -= Q.leftCols(cols) * coef;
                }
                for (Eigen::Index p = 0; p < c; ++p) V.col(c) -= V.col(p).dot(M.cwiseProduct(V.col(c))) * V.col(p);
            }
            const double norm = std::sqrt(V.col(c).dot(M.cwiseProduct(V.col(c))));
            if (norm > 1e-10) {
                V.col(c) /= norm;
                break;
            }
            if (redraw == 4) throw SolverNotConverged("block Lanczos: Krylov space exhausted");
            for (Eigen::Index i = 0; i < V.rows(); ++i) V(i, c) = rng.uniform(-1.0, 1.0);
        }
    }
}

}  // namespace

EigenData fem_eigensolve(const SurfaceMesh& mesh, const FemOptions& opt) {
    const Eigen::Index N = mesh.n_dof;
    if (opt.n_modes < 1 || opt.n_modes >= N) throw DomainError("fem_eigensolve: n_modes out of range");
    SpMat K;
    Eigen::VectorXd M;
    assemble(mesh, K, M);
    SpMat A = K;
    for (Eigen::Index i = 0; i < N; ++i) A.coeffRef(i, i) -= opt.shift * M[i];
    Eigen::SimplicialLDLT<SpMat> solver(A);
    if (solver.info() != Eigen::Success) throw SolverNotConverged("fem_eigensolve: factorisation failed");

    const int b = opt.block;
    const int nm = opt.n_modes;
    Eigen::Index m_max = std::max<Eigen::Index>(3 * nm, nm + 40);
    m_max = std::min<Eigen::Index>(N, (m_max + b - 1) / b * b);
    for (int attempt = 0; attempt <= opt.max_restarts; ++attempt) {
        Rng rng = Rng::stream(opt.seed, attempt);
        Eigen::MatrixXd Q(N, m_max), W(N, m_max);
        Eigen::Index cols = 0;
        Eigen::MatrixXd V(N, b);
        for (Eigen::Index i = 0; i < V.size(); ++i) V.data()[i] = rng.uniform(-1.0, 1.0);
        while (cols < m_max) {
            const Eigen::Index bb = std::min<Eigen::Index>(b, m_max - cols);
            V.conservativeResize(Eigen::NoChange, bb);
            m_orthonormalize(V, Q, cols, M, rng);
            Q.middleCols(cols, bb) = V;
            const Eigen::MatrixXd MV = M.asDiagonal() * V;
            W.middleCols(cols, bb) = solver.solve(MV);
            V = W.middleCols(cols, bb);
            cols += bb;
        }
        Eigen::MatrixXd T = Q.transpose() * M.asDiagonal() * W;
        T = 0.5 * (T + T.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        // largest Ritz values of the inverse give the smallest eigenvalues
        EigenData out;
        out.surface_id = mesh.surface_id;
        out.eigenvalues.resize(nm);
        out.eigenvectors.resize(N, nm);
        out.residuals.resize(nm);
        bool ok = true;
        double worst_scale = 1.0;
        for (int j = 0; j < nm; ++j) {
            const Eigen::Index col = m_max - 1 - j;
            const double theta = es.eigenvalues()[col];
            const double nu = opt.shift + 1.0 / theta;
            Eigen::VectorXd x = Q * es.eigenvectors().col(col);
            x /= std::sqrt(x.dot(M.cwiseProduct(x)));
            Eigen::Index imax;
            x.cwiseAbs().maxCoeff(&imax);
            if (x[imax] < 0) x = -x;
            const Eigen::VectorXd r = K * x - nu * M.cwiseProduct(x);
            const double res = std::sqrt(r.cwiseProduct(r).cwiseQuotient(M).sum());
            out.eigenvalues[j] = nu;
            out.eigenvectors.col(j) = x;
            out.residuals[j] = res;
            worst_scale = std::max(worst_scale, 1.0 + std::abs(nu));
            if (res > opt.residual_tol * (1.0 + std::abs(nu))) ok = false;
        }
        if (!ok) {
            if (m_max == N) break;
            m_max = std::min<Eigen::Index>(N, 2 * m_max);
            continue;
        }
        out.x.resize(N);
        out.y.resize(N);
        out.sheet.resize(N);
        for (Eigen::Index i = 0; i < N; ++i) {
            out.x[i] = mesh.dof_point[i].real();
            out.y[i] = mesh.dof_point[i].imag();
            out.sheet[i] = mesh.dof_sheet[i];
        }
        out.weight = M;
        out.ortho_tol = 1e-8;
        out.residual_tol = opt.residual_tol * worst_scale;
        return out;
    }
    throw SolverNotConverged("fem_eigensolve: residuals above tolerance after restarts");
}

EigenData fem_eigensolve(const CoverSurface& surface, double h, int n_modes) {
    FemOptions opt;
    opt.n_modes = n_modes;
    return fem_eigensolve(build_surface_mesh(surface, h), opt);
}

EigenData torus_selftest(double h, int n_modes) {
    FemOptions opt;
    opt.n_modes = n_modes;
    return fem_eigensolve(build_torus_mesh(h), opt);
}

std::vector<double> torus_exact_eigenvalues(int count) {
    std::vector<double> out;
    const int r = static_cast<int>(std::ceil(std::sqrt(double(count)))) + 2;
    for (int m = -r; m <= r; ++m)
        for (int n = -r; n <= r; ++n) out.push_back(4.0 * pi * pi * (m * m + n * n));
    std::sort(out.begin(), out.end());
    out.resize(count);
    return out;
}

}  // namespace hqe
