#include "hqe/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "hqe/quadrature.hpp"

namespace hqe {

double default_chi(double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return 1.0 - x * x * (3.0 - 2.0 * x);
}

GroupElement FuchsianGroup::evaluate(const std::vector<int>& word) const {
    GroupElement g;
    for (int s : word) g = g * letter(s);
    return g;
}

double FuchsianGroup::max_generator_displacement() const {
    double best = 0.0;
    for (const auto& g : generators) best = std::max(best, hyp_norm(DiscPoint(g.apply(0.0))));
    return best;
}

FuchsianGroup FuchsianGroup::trivial() {
    FuchsianGroup g;
    g.label = "trivial";
    return g;
}

FuchsianGroup FuchsianGroup::cyclic(double L) {
    if (!(L > 0)) throw DomainError("cyclic: translation length must be positive");
    FuchsianGroup g;
    std::ostringstream name;
    name.precision(17);
    name << "cyclic(" << L << ")";
    g.label = name.str();
    g.generators = {a_flow(L)};
    return g;
}

FuchsianGroup FuchsianGroup::bolza() {
    // Side pairings of the regular octagon with vertex angles pi/4; the
    // translation length of each is 2 acosh(1 + sqrt 2).
    const double a = 1.0 + std::sqrt(2.0);
    const double b = std::sqrt(2.0 + 2.0 * std::sqrt(2.0));
    FuchsianGroup g;
    g.label = "bolza";
    for (int k = 0; k < 4; ++k) g.generators.emplace_back(cplx(a, 0.0), std::polar(b, k * pi / 4.0));
    g.covolume = 4.0 * pi;
    g.relator = {0, 3, 6, 1, 4, 7, 2, 5};
    return g;
}

namespace {

double distance_between(cplx p, double p_omr2, cplx q, double q_omr2) {
    return 2.0 * std::asinh(std::abs(p - q) / std::sqrt(p_omr2 * q_omr2));
}

class OrbitIndex {
public:
    explicit OrbitIndex(double width) : width_(width) {}

    // Returns true if an element with the same orbit point is stored.
    bool seen(const OrbitElement& e, const std::vector<OrbitElement>& all) const {
        const long key = static_cast<long>(std::floor(e.displacement / width_));
        for (long k = key - 1; k <= key + 1; ++k) {
            auto it = buckets_.find(k);
            if (it == buckets_.end()) continue;
            for (std::size_t idx : it->second) {
                const auto& o = all[idx];
                if (distance_between(o.image, o.image_omr2, e.image, e.image_omr2) < 1e-6) return true;
            }
        }
        return false;
    }
    void insert(const OrbitElement& e, std::size_t idx) {
        buckets_[static_cast<long>(std::floor(e.displacement / width_))].push_back(idx);
    }

private:
    double width_;
    std::map<long, std::vector<std::size_t>> buckets_;
};

OrbitElement make_element(const GroupElement& g, const DiscPoint& center, std::vector<int> word) {
    OrbitElement e;
    e.g = g;
    e.image = g.apply(center.z());
    e.image_omr2 = center.one_minus_r2() / std::norm(std::conj(g.beta()) * center.z() + std::conj(g.alpha()));
    e.displacement = distance_between(center.z(), center.one_minus_r2(), e.image, e.image_omr2);
    e.word = std::move(word);
    return e;
}

OrbitBall bfs(const FuchsianGroup& group, const DiscPoint& center, double R, int word_cap, double slack,
              std::size_t budget) {
    std::vector<OrbitElement> all;
    OrbitIndex index(1e-3);
    all.push_back(make_element(GroupElement::identity(), center, {}));
    index.insert(all[0], 0);
    std::deque<std::size_t> queue{0};
    const double limit = R + slack;
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        if (static_cast<int>(all[cur].word.size()) >= word_cap) continue;
        for (int s = 0; s < group.letter_count(); ++s) {
            if (!all[cur].word.empty() && group.inverse_letter(all[cur].word.back()) == s) continue;
            std::vector<int> word = all[cur].word;
            word.push_back(s);
            OrbitElement e = make_element(all[cur].g * group.letter(s), center, std::move(word));
            if (e.displacement > limit) continue;
            if (index.seen(e, all)) continue;
            all.push_back(std::move(e));
            index.insert(all.back(), all.size() - 1);
            queue.push_back(all.size() - 1);
            if (all.size() > budget) throw BudgetExceeded("orbit_enumerate: element budget exhausted");
        }
    }
    OrbitBall ball;
    ball.center = center;
    ball.radius = R;
    for (auto& e : all)
        if (e.displacement <= R) ball.elements.push_back(std::move(e));
    std::stable_sort(ball.elements.begin(), ball.elements.end(),
                     [](const OrbitElement& a, const OrbitElement& b) { return a.displacement < b.displacement; });
    return ball;
}

std::vector<int> inverse_word(const FuchsianGroup& group, const std::vector<int>& word) {
    std::vector<int> out(word.rbegin(), word.rend());
    for (int& s : out) s = group.inverse_letter(s);
    return out;
}

}  // namespace

OrbitBall orbit_enumerate(const FuchsianGroup& group, const DiscPoint& center, double R, int word_cap,
                          const EnumerationOptions& opt) {
    if (R > 25.0) throw DomainError("orbit_enumerate: R must not exceed 25");
    if (word_cap < 1) throw DomainError("orbit_enumerate: word_cap must be at least 1");
    if (group.rank() == 0) {
        OrbitBall ball;
        ball.center = center;
        ball.radius = R;
        ball.elements.push_back(make_element(GroupElement::identity(), center, {}));
        return ball;
    }
    if (opt.slack >= 0 || !group.covolume) {
        const double slack = opt.slack >= 0 ? opt.slack : 2.0 * group.max_generator_displacement();
        return bfs(group, center, R, word_cap, slack, opt.budget);
    }
    // Cocompact: move the center into the Dirichlet domain, where prefixes of
    // the tile path stay within R + circumradius + |center|.
    const DirichletDomain domain = dirichlet_domain(group);
    const auto red = domain.reduce(center);
    const double slack = domain.circumradius + hyp_norm(red.point);
    OrbitBall inner = bfs(group, red.point, R, word_cap, slack, opt.budget);
    if (red.word.empty()) return inner;
    const GroupElement conj = red.g, conj_inv = red.g.inverse();
    const auto w_inv = inverse_word(group, red.word);
    OrbitBall ball;
    ball.center = center;
    ball.radius = R;
    for (const auto& e : inner.elements) {
        std::vector<int> word = red.word;
        word.insert(word.end(), e.word.begin(), e.word.end());
        word.insert(word.end(), w_inv.begin(), w_inv.end());
        OrbitElement out = make_element(conj * e.g * conj_inv, center, std::move(word));
        out.displacement = e.displacement;
        ball.elements.push_back(std::move(out));
    }
    return ball;
}

WordOracle word_oracle(const FuchsianGroup& group, double radius, int max_length) {
    WordOracle out;
    out.max_length = max_length;
    std::vector<GroupElement> within;
    within.push_back(GroupElement::identity());
    const int n = group.letter_count();
    std::vector<GroupElement> letters;
    for (int s = 0; s < n; ++s) letters.push_back(group.letter(s));
    // depth-first over reduced words with the running product on a stack
    std::vector<GroupElement> stack(max_length + 1);
    std::vector<int> last(max_length + 1, -1);
    std::function<void(int)> walk = [&](int depth) {
        if (depth == max_length) return;
        for (int s = 0; s < n; ++s) {
            if (depth > 0 && group.inverse_letter(last[depth]) == s) continue;
            const GroupElement g = stack[depth] * letters[s];
            stack[depth + 1] = g;
            last[depth + 1] = s;
            const bool trivial = std::abs(g.beta()) < 1e-9 && std::abs(std::abs(g.alpha().real()) - 1.0) < 1e-9;
            if (!trivial) out.systole_upper = std::min(out.systole_upper, g.translation_length());
            const double disp = hyp_norm(DiscPoint(g.apply(0.0)));
            if (disp <= radius) {
                bool dup = false;
                for (const auto& h : within)
                    if (h.approx_equal(g, 1e-7)) {
                        dup = true;
                        break;
                    }
                if (!dup) within.push_back(g);
            }
            walk(depth + 1);
        }
    };
    stack[0] = GroupElement::identity();
    walk(0);
    out.distinct_within = within.size();
    return out;
}

namespace {

struct KleinVertex {
    double x, y;
    int label;  // neighbor index of the edge leaving this vertex, -1 for the initial frame
};

std::vector<KleinVertex> clip(const std::vector<KleinVertex>& poly, double nx, double ny, double c, int label) {
    std::vector<KleinVertex> out;
    const std::size_t m = poly.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& cur = poly[i];
        const auto& nxt = poly[(i + 1) % m];
        const double dc = nx * cur.x + ny * cur.y - c;
        const double dn = nx * nxt.x + ny * nxt.y - c;
        auto cross = [&]() {
            const double s = dc / (dc - dn);
            return std::pair<double, double>{cur.x + s * (nxt.x - cur.x), cur.y + s * (nxt.y - cur.y)};
        };
        if (dc <= 1e-14) {
            out.push_back(cur);
            if (dn > 1e-14) {
                auto [x, y] = cross();
                out.push_back({x, y, label});
            }
        } else if (dn <= 1e-14) {
            auto [x, y] = cross();
            out.push_back({x, y, cur.label});
        }
    }
    return out;
}

cplx klein_to_disc(double x, double y) {
    const double r2 = x * x + y * y;
    return cplx(x, y) / (1.0 + std::sqrt(std::max(0.0, 1.0 - r2)));
}

}  // namespace

DirichletDomain dirichlet_domain(const FuchsianGroup& group) {
    if (!group.covolume || group.rank() == 0) throw DomainError("dirichlet_domain: group is not cocompact");
    EnumerationOptions opt;
    opt.slack = 0.0;
    const OrbitBall ball = bfs(group, DiscPoint(0.0), 14.0, 4, 0.0, opt.budget);
    std::vector<KleinVertex> poly;
    const int frame = 64;
    const double R0 = 1.0 / std::cos(pi / frame) + 1e-3;
    for (int k = 0; k < frame; ++k) poly.push_back({R0 * std::cos(two_pi * k / frame), R0 * std::sin(two_pi * k / frame), -1});
    for (std::size_t i = 1; i < ball.elements.size(); ++i) {
        const cplx w = ball.elements[i].image;
        const double omr2 = ball.elements[i].image_omr2;
        const double p0 = (2.0 - omr2) / omr2;
        const cplx pv = 2.0 * w / omr2;
        poly = clip(poly, pv.real(), pv.imag(), p0 - 1.0, static_cast<int>(i));
    }
    // merge coincident vertices (several bisectors meet at each vertex)
    std::vector<KleinVertex> merged;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& cur = poly[i];
        const auto& nxt = poly[(i + 1) % poly.size()];
        if (std::hypot(cur.x - nxt.x, cur.y - nxt.y) < 1e-9) continue;
        merged.push_back(cur);
    }
    DirichletDomain dom;
    for (const auto& v : merged) {
        if (v.label < 0 || std::hypot(v.x, v.y) >= 1.0 - 1e-12)
            throw DomainError("dirichlet_domain: polygon is not compact within the searched neighbours");
        dom.vertices.push_back(klein_to_disc(v.x, v.y));
        dom.side_elements.push_back(ball.elements[v.label].g);
        dom.side_words.push_back(ball.elements[v.label].word);
    }
    const std::size_t n = dom.vertices.size();
    dom.partner.assign(n, -1);
    for (std::size_t k = 0; k < n; ++k) {
        const GroupElement inv = dom.side_elements[k].inverse();
        for (std::size_t j = 0; j < n; ++j)
            if (dom.side_elements[j].approx_equal(inv, 1e-7)) dom.partner[k] = static_cast<int>(j);
        if (dom.partner[k] < 0) throw DomainError("dirichlet_domain: side without a paired side");
    }
    double angle_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const DiscPoint v(dom.vertices[k]);
        const GroupElement back = translation_to(v).inverse();
        const double to_next = std::arg(back.apply(dom.vertices[(k + 1) % n]));
        const double to_prev = std::arg(back.apply(dom.vertices[(k + n - 1) % n]));
        double a = std::fmod(to_prev - to_next, two_pi);
        if (a < 0) a += two_pi;
        dom.angles.push_back(a);
        angle_sum += a;
        dom.circumradius = std::max(dom.circumradius, hyp_norm(v));
    }
    dom.area = (static_cast<double>(n) - 2.0) * pi - angle_sum;
    return dom;
}

bool DirichletDomain::contains(const DiscPoint& z, double tol) const {
    const double d0 = hyp_norm(z);
    for (const auto& g : side_elements)
        if (hyp_distance(z, DiscPoint(g.apply(0.0))) < d0 - tol) return false;
    return true;
}

DirichletDomain::Reduced DirichletDomain::reduce(const DiscPoint& z) const {
    Reduced out{z, GroupElement::identity(), {}};
    for (int iter = 0; iter < 10000; ++iter) {
        const double d0 = hyp_norm(out.point);
        int best = -1;
        double best_gain = 1e-12;
        for (std::size_t k = 0; k < side_elements.size(); ++k) {
            const double gain = d0 - hyp_distance(out.point, DiscPoint(side_elements[k].apply(0.0)));
            if (gain > best_gain) {
                best_gain = gain;
                best = static_cast<int>(k);
            }
        }
        if (best < 0) return out;
        out.point = DiscPoint(side_elements[best].inverse().apply(out.point.z()));
        out.g = out.g * side_elements[best];
        out.word.insert(out.word.end(), side_words[best].begin(), side_words[best].end());
    }
    throw DomainError("DirichletDomain::reduce: no convergence");
}

double systole(const FuchsianGroup& group) {
    if (group.rank() == 0) return infinity;
    if (!group.covolume) {
        double best = infinity;
        for (const auto& g : group.generators) best = std::min(best, g.translation_length());
        if (group.rank() == 1) return best;
        throw DomainError("systole: only cocompact groups and cyclic groups are supported");
    }
    // Every closed geodesic of length l has a lift whose axis meets the
    // Dirichlet domain, and that lift moves 0 by at most l + 2 circumradius.
    const DirichletDomain dom = dirichlet_domain(group);
    double bound = infinity;
    for (const auto& g : group.generators) bound = std::min(bound, g.translation_length());
    const OrbitBall ball = orbit_enumerate(group, DiscPoint(0.0), bound + 2.0 * dom.circumradius + 1e-9, 64);
    double best = bound;
    for (std::size_t i = 1; i < ball.elements.size(); ++i) best = std::min(best, ball.elements[i].g.translation_length());
    return best;
}

double CoverSurface::volume() const {
    if (!base.covolume) return infinity;
    return degree * *base.covolume;
}

int CoverSurface::act(int sheet, const std::vector<int>& word) const {
    const int g = base.rank();
    for (int s : word) {
        if (s < g) {
            sheet = permutations[s][sheet];
        } else {
            const auto& p = permutations[s - g];
            sheet = static_cast<int>(std::find(p.begin(), p.end(), sheet) - p.begin());
        }
    }
    return sheet;
}

std::string CoverSurface::id() const {
    std::ostringstream os;
    os << base.label << "/deg" << degree << "/seed" << seed;
    return os.str();
}

CoverSurface CoverSurface::trivial_cover(const FuchsianGroup& base) {
    CoverSurface c;
    c.base = base;
    c.degree = 1;
    c.permutations.assign(base.rank(), std::vector<int>{0});
    return c;
}

bool is_transitive(const CoverSurface& cover) {
    std::vector<char> seen(cover.degree, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (const auto& p : cover.permutations) {
            int nbrs[2] = {p[i], static_cast<int>(std::find(p.begin(), p.end(), i) - p.begin())};
            for (int j : nbrs)
                if (!seen[j]) {
                    seen[j] = 1;
                    ++count;
                    stack.push_back(j);
                }
        }
    }
    return count == cover.degree;
}

namespace {

using Perm = std::vector<int>;

Perm random_perm(int n, Rng& rng) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(p[i], p[static_cast<int>(rng.below(i + 1))]);
    return p;
}

Perm invert(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

// right action of a word: apply letters left to right
Perm word_perm(const std::vector<Perm>& gens, int rank, const std::vector<int>& word, int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int s : word) {
        const Perm q = s < rank ? gens[s] : invert(gens[s - rank]);
        for (int& x : p) x = q[x];
    }
    return p;
}

std::vector<std::vector<int>> cycles(const Perm& p) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> c;
        for (int j = static_cast<int>(i); !seen[j]; j = p[j]) {
            seen[j] = 1;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

// Random pi with pi q pi^{-1} = x, or nothing when cycle types differ.
std::optional<Perm> random_conjugator(const Perm& q, const Perm& x, Rng& rng) {
    auto cq = cycles(q), cx = cycles(x);
    std::map<std::size_t, std::vector<std::vector<int>>> by_len_q, by_len_x;
    for (auto& c : cq) by_len_q[c.size()].push_back(c);
    for (auto& c : cx) by_len_x[c.size()].push_back(c);
    for (auto& [len, list] : by_len_q)
        if (by_len_x[len].size() != list.size()) return std::nullopt;
    Perm pi_(q.size());
    for (auto& [len, list] : by_len_q) {
        auto& targets = by_len_x[len];
        for (std::size_t i = targets.size(); i > 1; --i) std::swap(targets[i - 1], targets[rng.below(i)]);
        for (std::size_t c = 0; c < list.size(); ++c) {
            const std::size_t off = rng.below(len);
            for (std::size_t j = 0; j < len; ++j) pi_[list[c][j]] = targets[c][(j + off) % len];
        }
    }
    return pi_;
}

}  // namespace

CoverSurface random_cover(const FuchsianGroup& base, int degree, std::uint64_t seed) {
    if (degree < 1) throw DomainError("random_cover: degree must be positive");
    if (degree == 1) {
        CoverSurface c = CoverSurface::trivial_cover(base);
        c.seed = seed;
        return c;
    }
    const int g = base.rank();
    Rng rng(seed);
    // Locate a generator occurring once as s and once as s^{-1}; rotate the
    // relator to s X s^{-1} Y so that P(s) is solved by conjugacy.
    int solve = -1;
    std::vector<int> rel = base.relator;
    if (!rel.empty()) {
        for (int s = 0; s < g && solve < 0; ++s) {
            const auto pos = std::count(rel.begin(), rel.end(), s);
            const auto neg = std::count(rel.begin(), rel.end(), s + g);
            if (pos == 1 && neg == 1) solve = s;
        }
        if (solve < 0) throw DomainError("random_cover: relator has no letter solvable by conjugacy");
        std::rotate(rel.begin(), std::find(rel.begin(), rel.end(), solve), rel.end());
    }
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<Perm> gens(g);
        if (solve < 0) {
            for (auto& p : gens) p = random_perm(degree, rng);
        } else {
            const auto mid = std::find(rel.begin(), rel.end(), solve + g);
            const std::vector<int> X(rel.begin() + 1, mid), Y(mid + 1, rel.end());
            std::optional<Perm> pi_;
            for (int tries = 0; tries < 100000 && !pi_; ++tries) {
                for (int k = 0; k < g; ++k)
                    if (k != solve) gens[k] = random_perm(degree, rng);
                const Perm px = word_perm(gens, g, X, degree);
                const Perm qy = invert(word_perm(gens, g, Y, degree));
                pi_ = random_conjugator(qy, px, rng);
            }
            if (!pi_) throw NonTransitive("random_cover: no solution of the relator found");
            gens[solve] = *pi_;
        }
        CoverSurface cover;
        cover.base = base;
        cover.degree = degree;
        cover.permutations = gens;
        cover.seed = seed;
        if (!base.relator.empty()) {
            const Perm r = word_perm(gens, g, base.relator, degree);
            for (int i = 0; i < degree; ++i)
                if (r[i] != i) throw DomainError("random_cover: relator not satisfied");
        }
        if (is_transitive(cover)) return cover;
    }
    throw NonTransitive("random_cover: no transitive cover after 32 draws");
}

InjRad injectivity_radius_at(const FuchsianGroup& group, const DiscPoint& z, double search_R) {
    return injectivity_radius_at(CoverSurface::trivial_cover(group), z, 0, search_R);
}

InjRad injectivity_radius_at(const CoverSurface& surface, const DiscPoint& z, int sheet, double search_R) {
    const OrbitBall ball = orbit_enumerate(surface.base, z, search_R, 64);
    for (std::size_t i = 1; i < ball.elements.size(); ++i) {
        const auto& e = ball.elements[i];
        if (surface.degree == 1 || surface.act(sheet, e.word) == sheet) return {0.5 * e.displacement, false};
    }
    return {0.5 * search_R, true};
}

DiscPoint sample_ball(const DiscPoint& center, double radius, Rng& rng) {
    const double rho = std::acosh(1.0 + rng.uniform() * (std::cosh(radius) - 1.0));
    return polar_point(center, rho, two_pi * rng.uniform());
}

DiscPoint sample_domain(const DirichletDomain& domain, Rng& rng) {
    for (int i = 0; i < 100000; ++i) {
        const DiscPoint z = sample_ball(DiscPoint(0.0), domain.circumradius, rng);
        if (domain.contains(z)) return z;
    }
    throw DomainError("sample_domain: rejection sampling failed");
}

BsEstimate bs_statistic(const CoverSurface& surface, double R, std::size_t n_samples, std::uint64_t seed) {
    if (R > 25.0) throw DomainError("bs_statistic: R must not exceed 25");
    if (n_samples < 1) throw DomainError("bs_statistic: need at least one sample");
    const double vol = surface.volume();
    if (!std::isfinite(vol)) throw DomainError("bs_statistic: surface must be compact");
    // an embedded ball of radius r has area 2 pi (cosh r - 1) <= Vol
    if (R > std::acosh(1.0 + vol / two_pi)) return {1.0, 0.0, true, "area bound"};
    const double sys = systole(surface.base);
    if (R <= 0.5 * sys) return {0.0, 0.0, true, "below half the systole"};

    const DirichletDomain dom = dirichlet_domain(surface.base);
    const OrbitBall ball = orbit_enumerate(surface.base, DiscPoint(0.0), 2.0 * R + 2.0 * dom.circumradius, 64);
    std::vector<std::vector<int>> fixes;
    if (surface.degree > 1) {
        fixes.assign(ball.elements.size(), std::vector<int>(surface.degree));
        for (std::size_t i = 0; i < ball.elements.size(); ++i)
            for (int s = 0; s < surface.degree; ++s) fixes[i][s] = surface.act(s, ball.elements[i].word) == s;
    }
    Rng rng(seed);
    std::size_t hits = 0;
    for (std::size_t n = 0; n < n_samples; ++n) {
        const DiscPoint z = sample_domain(dom, rng);
        const int sheet = surface.degree > 1 ? static_cast<int>(rng.below(surface.degree)) : 0;
        const double reach = 2.0 * R + 2.0 * hyp_norm(z);
        for (std::size_t i = 1; i < ball.elements.size() && ball.elements[i].displacement <= reach; ++i) {
            if (surface.degree > 1 && !fixes[i][sheet]) continue;
            if (hyp_distance(z, DiscPoint(ball.elements[i].g.apply(z.z()))) < 2.0 * R) {
                ++hits;
                break;
            }
        }
    }
    const double p = static_cast<double>(hits) / n_samples;
    return {p, std::sqrt(p * (1.0 - p) / n_samples), false, "monte carlo"};
}

TruncatedPeriodization::TruncatedPeriodization(std::function<double(const DiscPoint&, const DiscPoint&)> kernel,
                                               const FuchsianGroup& group, double r, std::function<double(double)> chi,
                                               double max_norm)
    : kernel_(std::move(kernel)), chi_(std::move(chi)), r_(r), max_norm_(max_norm) {
    if (!(r > 0)) throw DomainError("periodize_truncated: r must be positive");
    ball_ = orbit_enumerate(group, DiscPoint(0.0), r + 2.0 * max_norm, 64);
}

double TruncatedPeriodization::operator()(const DiscPoint& z, const DiscPoint& w) const {
    const double nz = hyp_norm(z), nw = hyp_norm(w);
    if (nz > max_norm_ + 1e-9 || nw > max_norm_ + 1e-9)
        throw DomainError("periodize_truncated: argument outside the declared norm bound");
    const double reach = r_ + nz + nw;
    double sum = 0.0;
    for (const auto& e : ball_.elements) {
        if (e.displacement > reach) break;
        const DiscPoint gw(e.g.apply(w.z()));
        const double d = hyp_distance(z, gw);
        if (d > r_) continue;
        sum += kernel_(z, gw) * chi_(d / r_);
    }
    return sum;
}

TruncatedPeriodization periodize_truncated(std::function<double(const DiscPoint&, const DiscPoint&)> kernel,
                                           const FuchsianGroup& group, double r, std::function<double(double)> chi,
                                           double max_norm) {
    return TruncatedPeriodization(std::move(kernel), group, r, std::move(chi), max_norm);
}

HsBoundReport hs_bound_check(const RadialKernel& k, const FuchsianGroup& group, double r, std::size_t n_mc,
                             std::uint64_t seed, double region_radius, const std::function<double(double)>& chi) {
    if (n_mc < 2) throw DomainError("hs_bound_check: need at least two samples");
    HsBoundReport rep;
    rep.systole = systole(group);
    // region Z
    std::optional<DirichletDomain> dom;
    double region_norm;
    if (group.covolume) {
        dom = dirichlet_domain(group);
        rep.region_volume = *group.covolume;
        region_norm = dom->circumradius;
    } else {
        if (!(region_radius > 0)) throw DomainError("hs_bound_check: region_radius required for non-cocompact groups");
        if (region_radius > 0.5 * rep.systole + 1e-12)
            throw DomainError("hs_bound_check: region ball must lie in a fundamental domain");
        rep.region_volume = two_pi * (std::cosh(region_radius) - 1.0);
        region_norm = region_radius;
    }
    auto sample_region = [&](Rng& rng) {
        return dom ? sample_domain(*dom, rng) : sample_ball(DiscPoint(0.0), region_radius, rng);
    };

    const double reach = std::isfinite(k.support) ? k.support : 12.0;
    for (double t = 0.0; t <= reach; t += 1e-3) rep.kernel_sup = std::max(rep.kernel_sup, std::abs(k(t)));
    QuadOptions qopt;
    qopt.rel_tol = 1e-10;
    std::vector<double> cuts{0.0, reach};
    for (double b : k.breakpoints)
        if (b < reach) cuts.push_back(b);
    const double k_l2 = integrate([&](double t) { return k(t) * k(t) * std::sinh(t); }, cuts, qopt).value;
    rep.first_term = rep.region_volume * two_pi * k_l2;

    auto kernel = [&k](const DiscPoint& z, const DiscPoint& w) { return k(hyp_distance(z, w)); };
    const TruncatedPeriodization periodized(kernel, group, r, chi, region_norm + r);
    const double ball_area = two_pi * (std::cosh(r) - 1.0);

    // lhs by unfolding: int_D |K^G(z, .)|^2 = int_{B(z,r)} f(w) K^G(z, w) dw
    Rng rng = Rng::stream(seed, 0);
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n_mc; ++i) {
        const DiscPoint z = sample_region(rng);
        const DiscPoint w = sample_ball(z, r, rng);
        const double d = hyp_distance(z, w);
        const double f = k(d) * chi(d / r);
        const double x = rep.region_volume * ball_area * f * periodized(z, w);
        sum += x;
        sum2 += x * x;
    }
    rep.lhs.value = sum / n_mc;
    rep.lhs.std_error = std::sqrt(std::max(0.0, sum2 / n_mc - rep.lhs.value * rep.lhs.value) / (n_mc - 1));

    // Vol{InjRad < r} within the region
    Rng rng2 = Rng::stream(seed, 1);
    std::size_t hits = 0;
    if (r > 0.5 * rep.systole) {
        const OrbitBall ball = orbit_enumerate(group, DiscPoint(0.0), 2.0 * r + 2.0 * region_norm, 64);
        for (std::size_t i = 0; i < n_mc; ++i) {
            const DiscPoint z = sample_region(rng2);
            const double lim = 2.0 * r + 2.0 * hyp_norm(z);
            for (std::size_t j = 1; j < ball.elements.size() && ball.elements[j].displacement <= lim; ++j)
                if (hyp_distance(z, DiscPoint(ball.elements[j].g.apply(z.z()))) < 2.0 * r) {
                    ++hits;
                    break;
                }
        }
    }
    const double frac = static_cast<double>(hits) / n_mc;
    rep.small_injrad_volume = {rep.region_volume * frac, rep.region_volume * std::sqrt(frac * (1.0 - frac) / n_mc)};

    // Orbit points of w in B(z, r) are l apart, so at most
    // (cosh(r + l/2) - 1)/(cosh(l/2) - 1) of them fit.
    const double l = rep.systole;
    const double count = std::isfinite(l) ? (std::cosh(r + 0.5 * l) - 1.0) / (std::cosh(0.5 * l) - 1.0) : 1.0;
    const double per_point = rep.kernel_sup * rep.kernel_sup * ball_area * count;
    rep.second_term = rep.small_injrad_volume.value * per_point;
    rep.literal_second_term =
        std::isfinite(l) ? std::exp(2.0 * r) / l * rep.small_injrad_volume.value * rep.kernel_sup * rep.kernel_sup : 0.0;
    rep.rhs = rep.first_term + rep.second_term;
    const double rel = std::hypot(rep.lhs.value != 0 ? rep.lhs.std_error / std::abs(rep.lhs.value) : 0.0,
                                  rep.rhs > 0 ? rep.small_injrad_volume.std_error * per_point / rep.rhs : 0.0);
    rep.pass = rep.lhs.value <= rep.rhs * (1.0 + 3.0 * rel);
    rep.pass_literal_form = rep.lhs.value <= (rep.first_term + rep.literal_second_term) * (1.0 + 3.0 * rel);
    return rep;
}

}  // namespace hqe
