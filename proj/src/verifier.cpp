#include "supnorm/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "supnorm/kernels.hpp"
#include "supnorm/report.hpp"

namespace supnorm {

namespace {

constexpr double pi = std::numbers::pi;

// x, y with a x + b y = gcd(a, b) for a, b >= 0.
long long ext_gcd(long long a, long long b, long long& x, long long& y)
{
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1 = 0, y1 = 0;
    const long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Representative (a, b; c, d) of the coset with bottom row (c, d), c >= 1.
IntegerMoebius coset_representative(long long c, long long d)
{
    // a d - b c = 1: solve a d + (-b) c = 1 with |d| handled by sign.
    long long x = 0, y = 0;
    const long long g = ext_gcd(std::llabs(d), c, x, y);
    if (g != 1)
        throw DomainError("bottom row is not coprime");
    const long long a = d < 0 ? -x : x;
    const long long b = -y;
    return IntegerMoebius::make(a, b, c, d);
}

bool is_translation(const IntegerMoebius& g) { return g.c == 0; }

std::vector<IntegerMoebius> union_sorted(std::vector<IntegerMoebius> a, const std::vector<IntegerMoebius>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::string fmt(const char* f, double v)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

bool within_displacement(double sigma, double R) { return sigma <= R * (1.0 + 1e-12); }

std::vector<IntegerMoebius> enumerate_ball(const Point& z, double R)
{
    std::vector<IntegerMoebius> out;
    if (!(R >= 1.0))
        return out;
    const double y = z.y;

    auto scan = [&](const IntegerMoebius& g0) {
        // gamma_n = T^n g0 moves the image by n; displacement is convex in n.
        const Point w0 = g0.apply(z);
        const long long n0 = std::llround(z.x - w0.x);
        auto try_n = [&](long long n) {
            const Point w{w0.x + static_cast<double>(n), w0.y};
            if (!within_displacement(displacement(z, w), R))
                return false;
            out.push_back(IntegerMoebius::translation(n) * g0);
            return true;
        };
        try_n(n0);
        for (long long n = n0 + 1; try_n(n); ++n) {
        }
        for (long long n = n0 - 1; try_n(n); --n) {
        }
    };

    scan(IntegerMoebius::identity());
    const double root = std::sqrt(R);
    const long long c_max = static_cast<long long>(std::floor(2.0 * root / y * (1.0 + 1e-12)));
    for (long long c = 1; c <= c_max; ++c) {
        // |cz + d|^2 <= 4R bounds d around -c x.
        const long long d_lo = static_cast<long long>(std::floor(-c * z.x - 2.0 * root)) - 1;
        const long long d_hi = static_cast<long long>(std::ceil(-c * z.x + 2.0 * root)) + 1;
        for (long long d = d_lo; d <= d_hi; ++d) {
            if (std::gcd(c, d) != 1)
                continue;
            const double cx_d = c * z.x + d;
            if (cx_d * cx_d + c * c * y * y > 4.0 * R * (1.0 + 1e-12))
                continue;
            scan(coset_representative(c, d));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long ball_entry_bound(const Point& z, double R)
{
    // gamma = g A g^{-1} with g z-normalizing; |A|_F^2 = 4 sigma - 2.
    const double cond = z.y + (z.x * z.x + 1.0) / z.y;
    const double e = cond * std::sqrt(std::max(4.0 * R - 2.0, 0.0));
    return std::max<long long>(20, static_cast<long long>(std::ceil(e)) + 1);
}

std::vector<IntegerMoebius> brute_force_ball(const Point& z, double R, long long E)
{
    if (E <= 0)
        E = ball_entry_bound(z, R);
    std::vector<IntegerMoebius> out;
    if (!(R >= 1.0))
        return out;
    auto consider = [&](long long a, long long b, long long c, long long d) {
        if (c < 0 || (c == 0 && d <= 0))
            return;
        const IntegerMoebius g = IntegerMoebius::make(a, b, c, d);
        if (within_displacement(displacement(z, g.apply(z)), R))
            out.push_back(g);
    };
    for (long long a = -E; a <= E; ++a)
        for (long long b = -E; b <= E; ++b)
            for (long long c = 0; c <= E; ++c) {
                if (a != 0) {
                    const long long num = 1 + b * c;
                    if (num % a == 0 && std::llabs(num / a) <= E)
                        consider(a, b, c, num / a);
                } else if (b * c == -1) {
                    for (long long d = -E; d <= E; ++d)
                        consider(a, b, c, d);
                }
            }
    std::sort(out.begin(), out.end());
    return out;
}

CountingCheck counting_check(const Point& z, double r, double B_Y)
{
    const long long count = static_cast<long long>(enumerate_ball(z, r).size());
    const double bound = 4.0 * pi * B_Y * r;
    return {count, bound, static_cast<double>(count) <= bound};
}

std::vector<double> poincare_partial_sums(const Point& z, int k, double eps, const std::vector<double>& cutoffs)
{
    if (cutoffs.empty())
        return {};
    const double R = *std::max_element(cutoffs.begin(), cutoffs.end());
    std::vector<double> sigmas;
    for (const IntegerMoebius& g : enumerate_ball(z, R)) {
        if (g == IntegerMoebius::identity())
            continue;
        sigmas.push_back(displacement(z, g.apply(z)));
    }
    // Small terms first keeps the summation order independent of the cutoff list.
    std::sort(sigmas.begin(), sigmas.end(), std::greater<>());
    std::vector<double> out;
    for (double Rc : cutoffs) {
        double s = 0.0;
        for (double sg : sigmas)
            if (within_displacement(sg, Rc))
                s += std::pow(sg, -(k + eps));
        out.push_back(s);
    }
    return out;
}

PoincareCheck poincare_direct(const Point& z, int k, double eps, double R_cut, const EffectiveConstants& c)
{
    if (k < 2 || !(eps > 0.0))
        throw DomainError("direct Poincaré sum needs k >= 2 and eps > 0");
    if (!(R_cut >= c.sigma_Y))
        throw DomainError("cutoff must be at least sigma_Y");
    if (!c.B_Y)
        throw MissingDataError("B_Y is required for the tail bound");
    const double partial = poincare_partial_sums(z, k, eps, {R_cut}).front();
    const double tail = 4.0 * pi * *c.B_Y * (2.0 + eps) / (1.0 + eps) * std::pow(R_cut, -(k + eps - 1.0));
    const double bound = poincare_bound_compact(k, eps, *c.B_Y, c.sigma_Y, c.elliptic_excess);
    return {partial, tail, bound, partial + tail <= bound};
}

double parabolic_direct(double y, int k, double eps)
{
    if (!(y > 0.0))
        throw DomainError("height must be positive");
    double total = 0.0;
    for (long long n = 1;; ++n) {
        const double t = n / (2.0 * y);
        const double term = 2.0 * std::pow(1.0 + t * t, -(k + eps));
        total += term;
        if (term < 1e-18 * total || term == 0.0)
            break;
    }
    return total;
}

FaddeevCheck faddeev_check(double x, double y0, double y, double d1, double d2, double R)
{
    const double factor = faddeev_transfer(y0, y, d1, d2);
    const Point z = Point::make(x, y);
    const Point z0 = Point::make(x, y0);
    const auto set = union_sorted(enumerate_ball(z, R), enumerate_ball(z0, R));
    FaddeevCheck out{0.0, 0.0, true, false};
    for (const IntegerMoebius& g : set) {
        if (is_translation(g))
            continue;
        const double l = std::pow(displacement(z, g.apply(z)), -d2);
        const double r = factor * std::pow(displacement(z0, g.apply(z0)), -d1 - 1.0);
        out.left += l;
        out.right += r;
        if (l > r * (1.0 + 1e-12))
            out.termwise = false;
    }
    out.passed = out.termwise && out.left <= out.right * (1.0 + 1e-12);
    return out;
}

std::vector<GridSample> sample_grid(int n, double Y, int k)
{
    if (n < 1)
        throw DomainError("grid size must be positive");
    std::vector<GridSample> g;
    auto frac = [n](int i) { return n == 1 ? 0.5 : static_cast<double>(i) / (n - 1); };
    for (int i = 0; i < n; ++i) {
        const double x = -0.5 + frac(i);
        const double u_lo = 1.0 / Y;
        const double u_hi = 1.0 / std::sqrt(1.0 - x * x);
        for (int j = 0; j < n; ++j)
            g.push_back({Point::make(x, 1.0 / (u_lo + frac(j) * (u_hi - u_lo))), 0});
    }
    const double top = k / (2.0 * pi);
    if (top > Y)
        for (int j = 0; j < n; ++j)
            g.push_back({Point::make(0.0, Y + frac(j) * (top - Y)), 1});
    return g;
}

GridMaximum s2k_grid_maximum(const CuspFormBasis& b, const std::vector<GridSample>& grid)
{
    GridMaximum m{-1.0, Point{0.0, 1.0}, 0};
    for (const GridSample& s : grid) {
        const double v = s2k_eval(b, s.point);
        ++m.samples;
        if (v > m.value) {
            m.value = v;
            m.argmax = s.point;
        }
    }
    return m;
}

double published_modular_bound(int k)
{
    const double w = 2.0 * k - 1.0;
    return 31.0 * w / (4.0 * pi) + 72.0 * w * std::pow(1.014, -(k - 2.0));
}

bool VerificationReport::all_passed() const
{
    return std::all_of(items.begin(), items.end(), [](const VerificationItem& i) { return i.passed; });
}

nlohmann::json VerificationReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const VerificationItem& i : items) {
        nlohmann::json data = nlohmann::json::object();
        for (const auto& [key, v] : i.data)
            data[key] = v;
        arr.push_back({{"weight", i.weight},
                       {"check", i.check},
                       {"passed", i.passed},
                       {"value", i.value},
                       {"reference", i.reference},
                       {"detail", i.detail},
                       {"data", data}});
    }
    return {{"passed", all_passed()}, {"items", arr}};
}

std::string VerificationReport::table() const
{
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-24s %-6s %-20s %-20s %s\n", "weight", "check", "result", "value",
                  "reference", "detail");
    os << line;
    for (const VerificationItem& i : items) {
        std::snprintf(line, sizeof line, "%-6d %-24s %-6s %-20s %-20s ", i.weight, i.check.c_str(),
                      i.passed ? "PASS" : "FAIL", format_number(i.value).c_str(), format_number(i.reference).c_str());
        os << line << i.detail << '\n';
    }
    os << (all_passed() ? "all checks passed\n" : "verification FAILED\n");
    return os.str();
}

namespace {

std::vector<VerificationItem> group_checks(const EffectiveConstants& c)
{
    std::vector<VerificationItem> items;
    const double B_Y = *c.B_Y;

    {
        const Point z = Point::make(0.0, 1.0);
        const bool same = enumerate_ball(z, 10.0) == brute_force_ball(z, 10.0);
        items.push_back({0, "enumeration-oracle", same, static_cast<double>(enumerate_ball(z, 10.0).size()), 0.0,
                         "ball of displacement 10 at i matches entry-bounded search", {}});
    }
    {
        // 10 base points in F_Y times 5 radii.
        const std::vector<Point> zs = {Point::make(0.0, 1.0),  Point::make(0.5, std::sqrt(3.0) / 2.0),
                                       Point::make(0.1, 1.2),  Point::make(-0.3, 1.5),
                                       Point::make(0.25, 2.0), Point::make(-0.45, 0.95),
                                       Point::make(0.0, 3.0),  Point::make(0.4, 4.0),
                                       Point::make(-0.2, c.Y), Point::make(0.33, 1.05)};
        const std::vector<double> rs = {1.0, 2.5, 10.0, 25.0, 50.0};
        bool ok = true;
        double worst = 0.0;
        for (const Point& z : zs)
            for (double r : rs) {
                const CountingCheck cc = counting_check(z, r, B_Y);
                ok = ok && cc.passed;
                worst = std::max(worst, cc.count / cc.bound);
            }
        items.push_back({0, "counting", ok, worst, 1.0, "max count / (4 pi B_Y r) over 50 (z, r) pairs", {}});
    }
    {
        bool ok = true, termwise = true;
        double worst = 0.0;
        for (double y0 : {0.5, 1.0, 2.0})
            for (double ratio : {2.0, 3.0})
                for (double d1 : {1.0, 1.5, 2.0})
                    for (double extra : {1.0, 3.0})
                        for (double x : {0.0, 0.3}) {
                            const FaddeevCheck f = faddeev_check(x, y0, ratio * y0, d1, d1 + extra, 60.0);
                            ok = ok && f.passed;
                            termwise = termwise && f.termwise;
                            if (f.right > 0.0)
                                worst = std::max(worst, f.left / f.right);
                        }
        items.push_back({0, "faddeev-transfer", ok, worst, 1.0,
                         termwise ? "termwise and summed over 72 grid points" : "termwise violation", {}});
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (int k : {26, 30, 40, 60})
            for (double eps : {0.01, 0.1}) {
                const double top = k / (2.0 * pi);
                if (!(top >= c.Y))
                    continue;
                for (int j = 0; j <= 20; ++j) {
                    const double y = c.Y + (top - c.Y) * j / 20.0;
                    const double s = parabolic_direct(y, k, eps);
                    const double bnd = parabolic_sum_bound(k, eps);
                    ok = ok && s <= bnd;
                    worst = std::max(worst, s / bnd);
                }
            }
        items.push_back({0, "parabolic-sum", ok, worst, 1.0, "max direct sum / closed-form bound for Y <= y <= k/(2 pi)", {}});
    }
    return items;
}

std::vector<VerificationItem> weight_checks(int weight, int grid, const EffectiveConstants& c, const BoundReport& report)
{
    const int k = weight / 2;
    std::vector<VerificationItem> items;
    const FundamentalDomain dom = psl2z_domain();
    const CuspFormBasis b = build_basis(weight);

    {
        const std::vector<Point> zs = {Point::make(0.0, 1.0), Point::make(0.5, std::sqrt(3.0) / 2.0),
                                       Point::make(0.1, 1.2), Point::make(-0.3, 2.0), Point::make(0.0, c.Y)};
        bool ok = true;
        double worst = 0.0;
        for (const Point& z : zs) {
            const PoincareCheck p = poincare_direct(z, k, 0.1, 2000.0, c);
            ok = ok && p.passed;
            worst = std::max(worst, (p.partial + p.tail_bound) / p.bound);
        }
        items.push_back({weight, "poincare-direct", ok, worst, 1.0,
                         "max (partial + tail) / compact bound, eps = 0.1, cutoff 2000", {}});
    }
    {
        const double mass = s2k_mass(b);
        items.push_back({weight, "mass-identity", std::fabs(mass - 1.0) <= 1e-4, mass, 1.0,
                         "integral of S_2k over a shifted fundamental domain", {}});
    }

    const GridMaximum gm = s2k_grid_maximum(b, sample_grid(grid, c.Y, k));
    const std::map<std::string, double> where = {{"argmax_x", gm.argmax.x}, {"argmax_y", gm.argmax.y},
                                                 {"samples", static_cast<double>(gm.samples)}};
    const bool compact_branch = c.Y >= k / (2.0 * pi);
    const std::string branch = compact_branch ? "compact branch (Y >= k/(2 pi))" : "cusp branch (Y < k/(2 pi))";

    double engine = NAN;
    for (const BoundRow& r : report.rows)
        if (r.k == k && r.region == whole_domain_label())
            engine = r.upper;
    items.push_back({weight, "grid-upper-engine", gm.value <= engine, gm.value, engine, "engine bound, " + branch, where});
    if (compact_branch) {
        const double published = published_modular_bound(k);
        items.push_back({weight, "grid-upper-published", gm.value <= published, gm.value, published,
                         "published closed form, " + branch, where});
    }
    const double lower = dimension_d2k(dom, k) / covolume(dom) - 0.05;
    items.push_back({weight, "grid-lower", gm.value >= lower, gm.value, lower,
                     "grid maximum against d_2k / vol - 0.05" + fmt(", argmax y = %.4f", gm.argmax.y), where});
    return items;
}

}  // namespace

VerificationReport verify_all(const std::vector<int>& weights, int grid, double Y0)
{
    VerificationReport rep;
    for (int w : weights)
        if (w != 12 && w != 16 && w != 18 && w != 20 && w != 22 && w != 26)
            throw UnsupportedError("verification weight " + std::to_string(w) + " is not in {12,16,18,20,22,26}");
    if (grid < 1)
        throw DomainError("grid size must be positive");
    if (weights.empty())
        return rep;

    const std::set<int> unique(weights.begin(), weights.end());
    const int k_max = *unique.rbegin() / 2;
    const AlgorithmResult alg = run_algorithm(psl2z_domain(), Y0, 2, k_max);

    std::vector<std::future<std::vector<VerificationItem>>> jobs;
    jobs.push_back(std::async(std::launch::async, [&] { return group_checks(alg.constants); }));
    for (int w : unique)
        jobs.push_back(std::async(std::launch::async, [&, w] { return weight_checks(w, grid, alg.constants, alg.report); }));
    for (auto& j : jobs) {
        auto part = j.get();
        rep.items.insert(rep.items.end(), part.begin(), part.end());
    }
    std::stable_sort(rep.items.begin(), rep.items.end(), [](const VerificationItem& a, const VerificationItem& b) {
        return std::tie(a.weight, a.check) < std::tie(b.weight, b.check);
    });
    return rep;
}

}  // namespace supnorm
