#include "fracmoment/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "fracmoment/special.hpp"

namespace fracmoment {

namespace {

constexpr int kGaussPoints = 10;

struct GaussRule {
    std::array<double, kGaussPoints> x{};
    std::array<double, kGaussPoints> w{};
};

// Legendre nodes on [-1, 1] by Newton iteration from the Chebyshev guess.
GaussRule make_gauss_rule() {
    GaussRule g;
    const int n = kGaussPoints;
    for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        g.x[static_cast<std::size_t>(i)] = z;
        g.w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return g;
}

const GaussRule& gauss_rule() {
    static const GaussRule rule = make_gauss_rule();
    return rule;
}

// A smooth piece of contour: point(t) and derivative for t in [0, 1].
struct Piece {
    std::function<cplx(double)> point;
    std::function<cplx(double)> deriv;
    double length;
};

Piece segment(cplx a, cplx b) {
    return {[a, b](double t) { return a + (b - a) * t; }, [a, b](double) { return b - a; }, std::abs(b - a)};
}

// Arc of radius r centred at 0 from angle t0 to t1.
Piece arc(double r, double t0, double t1) {
    return {[=](double t) { return std::polar(r, t0 + (t1 - t0) * t); },
            [=](double t) { return cplx(0.0, 1.0) * std::polar(r, t0 + (t1 - t0) * t) * (t1 - t0); },
            r * std::abs(t1 - t0)};
}

std::vector<Piece> pieces_of(const ContourPath& path) {
    using Kind = ContourPath::Kind;
    switch (path.kind) {
        case Kind::Vertical:
            return {segment({path.anchor, -path.height}, {path.anchor, path.height})};
        case Kind::Hankel: {
            const double r = path.radius;
            return {segment({-path.arm, -r}, {0.0, -r}), arc(r, -kPi / 2, kPi / 2), segment({0.0, r}, {-path.arm, r})};
        }
        case Kind::SegmentChain: {
            std::vector<Piece> out;
            for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
                out.push_back(segment(path.vertices[i], path.vertices[i + 1]));
            return out;
        }
    }
    return {};
}

cplx gauss_piece(const ContourIntegrand& f, const Piece& piece, std::size_t panels, std::size_t& nodes) {
    const auto& g = gauss_rule();
    ComplexCompensatedSum acc;
    const double width = 1.0 / double(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = (double(p) + 0.5) * width;
        for (int i = 0; i < kGaussPoints; ++i) {
            const double t = mid + 0.5 * width * g.x[static_cast<std::size_t>(i)];
            acc += f(piece.point(t)) * piece.deriv(t) * (0.5 * width * g.w[static_cast<std::size_t>(i)]);
        }
    }
    nodes += panels * kGaussPoints;
    return acc.value();
}

double gamma_real(double a) {
    return std::exp(log_gamma(cplx(a, 0.0)).real());
}

// log^{alpha-1}(u)/Gamma(alpha) for u > 1, else 0.
double perron_kernel(double u, double alpha, double inv_gamma) {
    if (!(u > 1.0)) return 0.0;
    return std::pow(std::log(u), alpha - 1.0) * inv_gamma;
}

void check_lemma6(int m, double alpha, const Rational& beta, double y) {
    if (m != 1 && m != 2) throw DomainError("lemma6 supports m = 1 or 2");
    if (!(alpha > 2.0)) throw DomainError("lemma6 requires alpha > 2");
    if (!(beta.num > 0)) throw DomainError("lemma6 requires beta > 0");
    if (!(y >= 10.0)) throw DomainError("lemma6 requires y >= 10");
    if (m == 2 && y > kLemma6MaxYForM2) throw DomainError("m = 2 oracle is limited to y <= 5000");
}

double lemma6_gamma(int m, double alpha, const Rational& beta) {
    return 2.0 * m * alpha + double(m * m) * beta.value() - 2.0 * m;
}

}  // namespace

void ContourPath::validate() const {
    if (!(nodes_per_unit >= 10.0)) throw DomainError("at least 10 nodes per unit length are required");
    switch (kind) {
        case Kind::Vertical:
            if (!(height > 0.0)) throw DomainError("vertical truncation height must be positive");
            break;
        case Kind::Hankel:
            if (!(radius > 0.0)) throw DomainError("Hankel loop radius must be positive");
            if (!(arm >= 10.0)) throw DomainError("Hankel arm must be at least 10");
            break;
        case Kind::SegmentChain:
            if (vertices.size() < 2) throw DomainError("segment chain needs at least two vertices");
            break;
    }
}

ContourPath ContourPath::vertical(double c, double height, double nodes_per_unit) {
    ContourPath p;
    p.kind = Kind::Vertical;
    p.anchor = c;
    p.height = height;
    p.nodes_per_unit = nodes_per_unit;
    p.validate();
    return p;
}

ContourPath ContourPath::hankel(double radius, double arm, double nodes_per_unit) {
    ContourPath p;
    p.kind = Kind::Hankel;
    p.radius = radius;
    p.arm = arm;
    p.nodes_per_unit = nodes_per_unit;
    p.validate();
    return p;
}

ContourPath ContourPath::chain(std::vector<cplx> vertices, double nodes_per_unit) {
    ContourPath p;
    p.kind = Kind::SegmentChain;
    p.vertices = std::move(vertices);
    p.nodes_per_unit = nodes_per_unit;
    p.validate();
    return p;
}

QuadratureResult contour_integral(const ContourIntegrand& f, const ContourPath& path) {
    path.validate();
    const cplx scale = 1.0 / cplx(0.0, kTwoPi);
    QuadratureResult res;
    ComplexCompensatedSum fine, coarse;
    for (const auto& piece : pieces_of(path)) {
        const auto panels = std::max<std::size_t>(
            2, static_cast<std::size_t>(std::ceil(piece.length * path.nodes_per_unit / kGaussPoints)));
        const auto half = (panels + 1) / 2;
        fine += gauss_piece(f, piece, 2 * half, res.nodes);
        coarse += gauss_piece(f, piece, half, res.nodes);
    }
    res.value = scale * fine.value();
    res.error_estimate = std::abs(scale * (fine.value() - coarse.value()));
    return res;
}

QuadratureResult vertical_quadrature(const ContourIntegrand& f, const ContourPath& path) {
    if (path.kind != ContourPath::Kind::Vertical) throw DomainError("vertical_quadrature needs a vertical path");
    path.validate();
    constexpr double kTol = 1e-9;
    constexpr std::size_t kBudget = std::size_t(1) << 22;
    const double c = path.anchor;
    const double big_t = path.height;
    auto g = [&](double t) { return f(cplx(c, t)); };

    QuadratureResult res;
    auto intervals = static_cast<std::size_t>(std::ceil(2.0 * big_t * path.nodes_per_unit));
    double h = 2.0 * big_t / double(intervals);
    ComplexCompensatedSum base;
    base += 0.5 * (g(-big_t) + g(big_t));
    for (std::size_t i = 1; i < intervals; ++i) base += g(-big_t + double(i) * h);
    cplx raw = base.value();  // sum of node values with endpoint halves
    res.nodes = intervals + 1;
    cplx current = raw * h;
    double diff = std::numeric_limits<double>::infinity();
    while (res.nodes < kBudget) {
        ComplexCompensatedSum mids;
        for (std::size_t i = 0; i < intervals; ++i) mids += g(-big_t + (double(i) + 0.5) * h);
        res.nodes += intervals;
        raw += mids.value();
        intervals *= 2;
        h *= 0.5;
        const cplx next = raw * h;
        diff = std::abs(next - current);
        current = next;
        if (diff < kTol) break;
    }

    // Tail sample over T < |t| < 2T at the final spacing (capped).
    const auto tail_nodes = std::min<std::size_t>(static_cast<std::size_t>(std::ceil(big_t / h)), 1u << 16);
    const double th = big_t / double(tail_nodes);
    ComplexCompensatedSum tail;
    for (std::size_t i = 0; i < tail_nodes; ++i) {
        const double t = big_t + (double(i) + 0.5) * th;
        tail += (g(t) + g(-t)) * th;
    }
    res.nodes += 2 * tail_nodes;
    const double tail_mag = std::abs(tail.value()) / kTwoPi;

    res.value = current / kTwoPi;
    res.error_estimate = diff / kTwoPi + tail_mag;
    res.budget_exceeded = diff >= kTol || tail_mag > 1e-6;
    return res;
}

double perron_closed_form(int order, double x) {
    if (order != 2 && order != 3) throw DomainError("perron order must be 2 or 3");
    if (!(x > 0.0)) throw DomainError("perron weight requires x > 0");
    if (x == 1.0) throw DomainError("perron weight is undefined at the boundary x = 1");
    if (x < 1.0) return 0.0;
    const double l = std::log(x);
    return order == 2 ? l : 0.5 * l * l;
}

QuadratureResult perron_weight_quadrature(int order, double x) {
    perron_closed_form(order, x);  // argument checks
    // (1/2pi) int_R x^{c+it} (c+it)^{-m} dt = (x^c/pi) Re int_0^inf e^{i lam t} g(t) dt,
    // g(t) = (c+it)^{-m}; [0, T] by Gauss panels, [T, inf) by its asymptotic series.
    constexpr double c = 1.0;
    const double lam = std::log(x);
    const double big_t = std::min(1e5, std::max(60.0, 40.0 / std::abs(lam)));
    const cplx iu(0.0, 1.0);
    auto g = [&](double t) { return std::pow(cplx(c, t), -double(order)); };
    auto integrand = [&](cplx w) { return std::exp(iu * lam * w.real()) * g(w.real()); };

    const Piece piece = segment(0.0, big_t);
    const auto panels = static_cast<std::size_t>(std::ceil(big_t / 0.25));
    QuadratureResult res;
    const cplx fine = gauss_piece(integrand, piece, 2 * panels, res.nodes);
    const cplx coarse = gauss_piece(integrand, piece, panels, res.nodes);

    // int_T^inf e^{i lam t} g dt = -e^{i lam T} sum_n (-1)^n g^{(n)}(T) / (i lam)^{n+1},
    // g^{(n)}(t) = (-m)(-m-1)...(-m-n+1) i^n (c+it)^{-m-n}.
    const cplx ilam = iu * lam;
    const cplx zt(c, big_t);
    cplx term_coeff = 1.0;  // product of falling factors times i^n
    cplx tail = 0.0;
    double last = 0.0;
    for (int n = 0; n < 16; ++n) {
        const cplx gn = term_coeff * std::pow(zt, -double(order + n));
        const cplx term = (n % 2 == 0 ? 1.0 : -1.0) * gn / std::pow(ilam, double(n + 1));
        tail += term;
        last = std::abs(term);
        term_coeff *= -double(order + n) * iu;
    }
    tail *= -std::exp(ilam * big_t);

    const double pref = std::pow(x, c) / kPi;
    res.value = pref * (fine + tail).real();
    res.error_estimate = pref * (std::abs(fine - coarse) + last);
    return res;
}

double perron_weight(int order, double x) {
    return perron_weight_quadrature(order, x).value.real();
}

QuadratureResult hankel_recip_gamma_quadrature(double alpha, double arm, double radius) {
    if (!(alpha > 0.0)) throw DomainError("hankel_recip_gamma requires alpha > 0");
    const auto path = ContourPath::hankel(radius, arm, 40.0);
    auto f = [alpha](cplx w) { return std::exp(w - alpha * std::log(w)); };
    auto res = contour_integral(f, path);
    res.error_estimate += std::exp(-arm);
    return res;
}

double hankel_recip_gamma(double alpha, double arm) {
    return hankel_recip_gamma_quadrature(alpha, arm).value.real();
}

namespace {

// Continue log zeta from `from` to `to` along a straight segment, starting
// with the known value at `from`.
cplx continue_log_zeta(cplx from, cplx to, cplx log_from) {
    cplx w = from;
    cplx lz = log_from;
    const double total = std::abs(to - from);
    double done = 0.0;
    while (done < total) {
        const double dist_to_pole = std::abs(w - 1.0);
        const double step = std::min({0.05, 0.2 * dist_to_pole, total - done});
        done += step;
        w = done >= total ? to : from + (to - from) * (done / total);
        const cplx next = std::log(riemann_zeta(w));
        const double k = std::round((lz.imag() - next.imag()) / kTwoPi);
        lz = next + cplx(0.0, kTwoPi * k);
    }
    return lz;
}

}  // namespace

cplx zeta_frac_power(double alpha, cplx s) {
    if (s == cplx(1.0, 0.0)) throw PoleError("zeta has a pole at s = 1");
    if (!(s.real() > 0.5)) throw DomainError("zeta_frac_power requires Re s > 1/2");
    const double sigma0 = std::max(2.0, s.real());
    const cplx start(sigma0, 0.0);
    const cplx corner(sigma0, s.imag());
    cplx lz = std::log(riemann_zeta(start));  // real: zeta > 1 on the ray
    lz = continue_log_zeta(start, corner, lz);
    lz = continue_log_zeta(corner, s, lz);
    return std::exp(alpha * lz);
}

std::vector<cplx> log_zeta_on_line(double sigma, double step, std::size_t n) {
    if (!(sigma > 1.0)) throw DomainError("log_zeta_on_line requires sigma > 1");
    std::vector<cplx> raw(2 * n + 1);
    parallel_for(raw.size(), [&](std::size_t i) {
        const double t = (double(i) - double(n)) * step;
        raw[i] = std::log(riemann_zeta(cplx(sigma, t)));
    });
    // Unwrap outward from t = 0, where zeta is real and positive.
    raw[n] = cplx(raw[n].real(), 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
        for (const std::size_t idx : {n + k, n - k}) {
            const std::size_t prev = idx > n ? idx - 1 : idx + 1;
            const double d = std::round((raw[prev].imag() - raw[idx].imag()) / kTwoPi);
            raw[idx] += cplx(0.0, kTwoPi * d);
        }
    }
    return raw;
}

double lemma6_oracle(int m, double alpha, const Rational& beta, double y) {
    check_lemma6(m, alpha, beta, y);
    const double inv_gamma = 1.0 / gamma_real(alpha);
    const auto top = static_cast<std::uint64_t>(std::ceil(y)) - 1;  // n < y
    if (m == 1) {
        CompensatedSum acc;
        for_each_divisor_coeff(beta, 1, top, [&](std::uint64_t n, double d) {
            const double w = perron_kernel(y / double(n), alpha, inv_gamma);
            acc += d / double(n) * w * w;
        });
        return acc.value();
    }
    // m = 2: indices a b / c d; rows a*b, c*d and columns a*c, b*d below y.
    const auto limit = static_cast<std::size_t>(top);
    const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(limit, 2)));
    const auto dseries = divisor_series(sieve, beta, limit);
    std::vector<double> dn(limit + 1, 0.0), wp(limit + 1, 0.0);
    for (std::size_t n = 1; n <= limit; ++n) {
        dn[n] = dseries[n] / double(n);
        wp[n] = perron_kernel(y / double(n), alpha, inv_gamma);
    }
    std::vector<double> partial(limit + 1, 0.0);
    parallel_for(limit, [&](std::size_t i) {
        const std::size_t a = i + 1;
        CompensatedSum acc;
        for (std::size_t b = 1; a * b <= limit; ++b) {
            const double wab = dn[a] * dn[b] * wp[a * b];
            for (std::size_t c = 1; a * c <= limit; ++c) {
                const double wac = wab * dn[c] * wp[a * c];
                double inner = 0.0;
                for (std::size_t d = 1; c * d <= limit && b * d <= limit; ++d)
                    inner += dn[d] * wp[c * d] * wp[b * d];
                acc += wac * inner;
            }
        }
        partial[a] = acc.value();
    });
    CompensatedSum total;
    for (const double v : partial) total += v;
    return total.value();
}

QuadratureResult lemma6_integral(double alpha, const Rational& beta, double y, double u_max, double step) {
    check_lemma6(1, alpha, beta, y);
    if (!(step > 0.0) || !(u_max > 10.0 * step)) throw DomainError("lemma6 grid needs step > 0 and u_max >> step");
    // z_j = (1 + i u_j)/L, L = log y:
    //   value = L^{2 alpha - 2}/(4 pi^2) e^2 h^2 sum_{k1,k2} Z(k1+k2) e^{i(k1+k2)h} g(k1) g(k2),
    //   g(k) = (1 + i k h)^{-alpha},  Z(K) = zeta^beta(1 + (2 + i K h)/L).
    const double big_l = std::log(y);
    auto n = static_cast<std::size_t>(std::ceil(u_max / step));
    if (n % 2) ++n;  // keep the coarse grid symmetric
    const std::size_t width = 2 * n + 1;
    std::vector<cplx> g(width);
    for (std::size_t i = 0; i < width; ++i) {
        const double u = (double(i) - double(n)) * step;
        g[i] = std::exp(-alpha * std::log(cplx(1.0, u)));
    }
    const auto logz = log_zeta_on_line(1.0 + 2.0 / big_l, step / big_l, 2 * n);
    const double b = beta.value();
    std::vector<cplx> outer(logz.size());
    for (std::size_t kk = 0; kk < logz.size(); ++kk) {
        const double big_u = (double(kk) - 2.0 * double(n)) * step;
        outer[kk] = std::exp(b * logz[kk] + cplx(0.0, big_u));
    }

    // Convolution c(K) = sum g(k1) g(K - k1), full grid and even-index grid.
    std::vector<cplx> conv(logz.size(), 0.0), conv2(logz.size(), 0.0);
    parallel_for(conv.size(), [&](std::size_t kk) {
        const std::size_t lo = kk >= width ? kk - width + 1 : 0;
        const std::size_t hi = std::min(kk, width - 1);
        cplx full = 0.0, even = 0.0;
        for (std::size_t k1 = lo; k1 <= hi; ++k1) {
            const cplx p = g[k1] * g[kk - k1];
            full += p;
            // both grid indices k - n even
            if ((k1 + n) % 2 == 0 && (kk - k1 + n) % 2 == 0) even += p;
        }
        conv[kk] = full;
        conv2[kk] = even;
    });
    ComplexCompensatedSum fine, coarse;
    for (std::size_t kk = 0; kk < logz.size(); ++kk) {
        fine += outer[kk] * conv[kk];
        coarse += outer[kk] * conv2[kk];
    }
    const double pref = std::pow(big_l, 2.0 * alpha - 2.0) / (4.0 * kPi * kPi) * std::exp(2.0);
    QuadratureResult res;
    res.value = pref * step * step * fine.value();
    const cplx coarse_v = pref * 4.0 * step * step * coarse.value();
    res.error_estimate = std::abs(res.value - coarse_v);
    res.nodes = width * width;
    return res;
}

Lemma6Report lemma6_check(const Lemma6Params& p, bool numeric) {
    check_lemma6(p.m, p.alpha, p.beta, p.y);
    Lemma6Report rep;
    rep.params = p;
    rep.gamma = lemma6_gamma(p.m, p.alpha, p.beta);
    rep.oracle = lemma6_oracle(p.m, p.alpha, p.beta, p.y);
    rep.ratio = rep.oracle / std::pow(std::log(p.y), rep.gamma);
    if (numeric && p.m == 1) {
        const auto q = lemma6_integral(p.alpha, p.beta, p.y, p.u_max, p.step);
        rep.has_numeric = true;
        rep.numeric = q.value.real();
        rep.numeric_imag = q.value.imag();
        rep.numeric_error = q.error_estimate;
        rep.relative_error = std::abs(rep.numeric - rep.oracle) / rep.oracle;
    }
    return rep;
}

std::vector<SweepRow> lemma6_sweep(int m, double alpha, const Rational& beta, const std::vector<double>& ys,
                                   bool numeric) {
    std::vector<SweepRow> rows;
    for (const double y : ys) {
        Lemma6Params p;
        p.m = m;
        p.alpha = alpha;
        p.beta = beta;
        p.y = y;
        const auto rep = lemma6_check(p, numeric);
        rows.push_back({y, rep.has_numeric ? rep.numeric : std::nan(""), rep.oracle, rep.ratio});
    }
    return rows;
}

Lemma6Report khalf_final_check(double y, bool numeric) {
    if (!(y > 1.0)) throw DomainError("khalf_final_check requires y > 1");
    Lemma6Params p;
    p.m = 1;
    p.alpha = 2.5;
    p.beta = Rational(1, 4);
    p.y = y;
    return lemma6_check(p, numeric);
}

EtaReport eta_stability(int s_param, cplx w0, const ShiftVector& shifts, const std::vector<std::size_t>& cutoffs) {
    if (s_param < 1) throw DomainError("s must be a positive integer");
    shifts.validate();
    for (const auto& w : shifts.shifts)
        if (!((w0 + w).real() > kEtaMinRealPart))
            throw DomainError("eta_stability requires Re(w0 + w_i) > 0.2 for absolute convergence");
    if (cutoffs.empty()) throw DomainError("at least one cutoff is required");
    const auto top = *std::max_element(cutoffs.begin(), cutoffs.end());
    const FactorSieve sieve(static_cast<std::uint32_t>(std::max<std::size_t>(top, 2)));
    const auto sigma = shifted_series(sieve, ShiftMode::Sigma, shifts, s_param, top);

    cplx denom = 1.0;
    for (const auto& w : shifts.shifts) denom *= zeta_frac_power(1.0 / (2.0 * s_param), 1.0 + w0 + w);

    std::vector<std::size_t> sorted = cutoffs;
    std::sort(sorted.begin(), sorted.end());
    EtaReport rep;
    rep.s_param = s_param;
    rep.w0 = w0;
    rep.shifts = shifts;
    ComplexCompensatedSum acc;
    std::size_t done = 0;
    for (const auto cut : sorted) {
        for (std::size_t nn = done + 1; nn <= cut; ++nn)
            acc += sigma[nn] * std::exp(-(1.0 + w0) * std::log(double(nn)));
        done = cut;
        rep.levels.push_back({cut, acc.value() / denom});
    }
    if (rep.levels.size() >= 2)
        rep.drift = std::abs(rep.levels.back().eta - rep.levels[rep.levels.size() - 2].eta);
    return rep;
}

}  // namespace fracmoment
