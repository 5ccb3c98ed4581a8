#include "credlink/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credlink/errors.hpp"

namespace credlink {

namespace {

constexpr int kMinSample = 25;

// MacKinnon (2010), "Critical Values for Cointegration Tests", QED WP 1227,
// Table 2, single series. cv(T) = b0 + b1/T + b2/T^2 + b3/T^3.
struct ResponseSurface {
    double b0, b1, b2, b3;
    double at(int t) const {
        const double x = 1.0 / t;
        return b0 + x * (b1 + x * (b2 + x * b3));
    }
};
constexpr ResponseSurface kTauC[3] = {
    {-3.43035, -6.5393, -16.786, -79.433},   // 1%
    {-2.86154, -2.8903, -4.234, -40.040},    // 5%
    {-2.56677, -1.5384, -2.809, 0.0},        // 10%
};
constexpr ResponseSurface kTauCT[3] = {
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
};

// Kwiatkowski, Phillips, Schmidt & Shin (1992), Table 1.
constexpr double kKpssLevel[3] = {0.739, 0.463, 0.347};
constexpr double kKpssTrend[3] = {0.216, 0.146, 0.119};

struct OlsResult {
    Vector coef;
    Vector se;
    double ssr = 0.0;
    int n = 0;
    int k = 0;
};

OlsResult ols(const Matrix& x, const Vector& y) {
    Eigen::ColPivHouseholderQR<Matrix> qr(x);
    if (qr.rank() < x.cols()) {
        throw DegenerateRegression("unit-root regression design is collinear");
    }
    OlsResult r;
    r.coef = qr.solve(y);
    const Vector resid = y - x * r.coef;
    r.ssr = resid.squaredNorm();
    r.n = static_cast<int>(x.rows());
    r.k = static_cast<int>(x.cols());
    const double sigma2 = r.ssr / (r.n - r.k);
    const Matrix xtx_inv =
        (x.transpose() * x).ldlt().solve(Matrix::Identity(x.cols(), x.cols()));
    r.se = (sigma2 * xtx_inv.diagonal()).cwiseSqrt();
    return r;
}

// Autocovariance of u at lag j, 1/T convention.
double acov(std::span<const double> u, int j) {
    const int t = static_cast<int>(u.size());
    double s = 0.0;
    for (int i = j; i < t; ++i) {
        s += u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i - j)];
    }
    return s / t;
}

// Bartlett-kernel long-run variance with truncation q.
double long_run_variance(std::span<const double> u, int q) {
    double lrv = acov(u, 0);
    for (int j = 1; j <= q; ++j) {
        lrv += 2.0 * (1.0 - double(j) / (q + 1)) * acov(u, j);
    }
    return lrv;
}

void fill_adf_criticals(UnitRootReport& rep, Deterministic det, int t_eff) {
    const ResponseSurface* rs = det == Deterministic::ConstantOnly ? kTauC : kTauCT;
    rep.cv1 = rs[0].at(t_eff);
    rep.cv5 = rs[1].at(t_eff);
    rep.cv10 = rs[2].at(t_eff);
    rep.reject_at_5pct = rep.statistic < rep.cv5;
    rep.reject_at_1pct = rep.statistic < rep.cv1;
}

Matrix dickey_fuller_design(std::span<const double> y, Deterministic det,
                            int lags, int rows) {
    // Rows are t = n - rows .. n - 1 of the differenced series; columns are
    // [1, (t), y_{t-1}, dy_{t-1}, ..., dy_{t-lags}].
    const int n = static_cast<int>(y.size());
    const int det_cols = det == Deterministic::ConstantOnly ? 1 : 2;
    const int first = n - rows;  // index into the level series of the first response
    Matrix x(rows, det_cols + 1 + lags);
    for (int r = 0; r < rows; ++r) {
        const int t = first + r;  // response is dy_t = y_t - y_{t-1}
        int c = 0;
        x(r, c++) = 1.0;
        if (det == Deterministic::ConstantAndTrend) x(r, c++) = t;
        x(r, c++) = y[static_cast<std::size_t>(t - 1)];
        for (int j = 1; j <= lags; ++j) {
            x(r, c++) = y[static_cast<std::size_t>(t - j)] -
                        y[static_cast<std::size_t>(t - j - 1)];
        }
    }
    return x;
}

Vector dickey_fuller_response(std::span<const double> y, int rows) {
    const int n = static_cast<int>(y.size());
    Vector dy(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = n - rows + r;
        dy(r) = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
    }
    return dy;
}

}  // namespace

std::string to_string(Deterministic det) {
    return det == Deterministic::ConstantOnly ? "c" : "ct";
}

std::string to_string(UnitRootTest test) {
    switch (test) {
        case UnitRootTest::ADF: return "ADF";
        case UnitRootTest::PhillipsPerron: return "PP";
        case UnitRootTest::KPSS: return "KPSS";
    }
    return "?";
}

int newey_west_bandwidth(std::span<const double> residuals) {
    // Automatic Bartlett bandwidth of Newey & West (1994) with the pilot
    // truncation floor(T^(2/9)) used by Hobijn, Franses & Ooms (2004) for
    // the KPSS statistic.
    const int t = static_cast<int>(residuals.size());
    const int pilot = static_cast<int>(std::floor(std::pow(t, 2.0 / 9.0)));
    double s0 = acov(residuals, 0);
    double s1 = 0.0;
    for (int j = 1; j <= pilot; ++j) {
        const double g = acov(residuals, j);
        s0 += 2.0 * g;
        s1 += 2.0 * j * g;
    }
    if (!(s0 > 0.0)) return 0;
    const double ratio = s1 / s0;
    const double gamma = 1.1447 * std::cbrt(ratio * ratio);
    const int bw = static_cast<int>(std::floor(gamma * std::cbrt(double(t))));
    return std::clamp(bw, 0, t - 1);
}

UnitRootReport adf_test(std::span<const double> series, Deterministic det,
                        std::optional<int> max_lag) {
    const int n = static_cast<int>(series.size());
    if (n < kMinSample) {
        throw TooShort("adf_test: need at least 25 observations");
    }
    const int det_cols = det == Deterministic::ConstantOnly ? 1 : 2;
    int maxlag = max_lag.value_or(
        static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25))));
    maxlag = std::clamp(maxlag, 0, (n - 1) / 2 - det_cols - 1);

    // Fixed augmentation order when given; otherwise Schwarz-criterion choice
    // on the sample all candidates share.
    int best_lag = 0;
    if (max_lag.has_value()) {
        best_lag = std::clamp(*max_lag, 0, maxlag);
    } else {
        const int rows = n - 1 - maxlag;
        const Vector dy = dickey_fuller_response(series, rows);
        double best_sc = std::numeric_limits<double>::infinity();
        for (int lag = 0; lag <= maxlag; ++lag) {
            const Matrix x = dickey_fuller_design(series, det, lag, rows);
            const OlsResult fit = ols(x, dy);
            const double sc =
                rows * std::log(fit.ssr / rows) + fit.k * std::log(double(rows));
            if (sc < best_sc - 1e-12) {
                best_sc = sc;
                best_lag = lag;
            }
        }
    }

    const int rows = n - 1 - best_lag;
    const Matrix x = dickey_fuller_design(series, det, best_lag, rows);
    const Vector dy = dickey_fuller_response(series, rows);
    const OlsResult fit = ols(x, dy);
    const int gamma_col = det_cols;  // coefficient on y_{t-1}

    UnitRootReport rep;
    rep.test_kind = UnitRootTest::ADF;
    rep.deterministic = det;
    rep.lag_or_bandwidth = best_lag;
    rep.statistic = fit.coef(gamma_col) / fit.se(gamma_col);
    fill_adf_criticals(rep, det, rows);
    return rep;
}

UnitRootReport pp_test(std::span<const double> series, Deterministic det,
                       std::optional<int> bandwidth) {
    const int n = static_cast<int>(series.size());
    if (n < kMinSample) {
        throw TooShort("pp_test: need at least 25 observations");
    }
    const int rows = n - 1;
    const Matrix x = dickey_fuller_design(series, det, 0, rows);
    const Vector dy = dickey_fuller_response(series, rows);
    const OlsResult fit = ols(x, dy);
    const int gamma_col = det == Deterministic::ConstantOnly ? 1 : 2;

    const Vector resid = dy - x * fit.coef;
    std::vector<double> u(resid.data(), resid.data() + resid.size());
    const int q = bandwidth.value_or(newey_west_bandwidth(u));

    const double gamma0 = acov(u, 0);
    const double lrv = long_run_variance(u, q);
    if (!(lrv > 0.0)) {
        throw NonPositiveLongRunVariance("pp_test: long-run variance is not positive");
    }
    const double s = std::sqrt(fit.ssr / (fit.n - fit.k));
    const double t_gamma = fit.coef(gamma_col) / fit.se(gamma_col);

    // Hamilton (1994), eq. 17.6.8.
    const double z_tau = std::sqrt(gamma0 / lrv) * t_gamma -
                         (lrv - gamma0) * rows * fit.se(gamma_col) /
                             (2.0 * std::sqrt(lrv) * s);

    UnitRootReport rep;
    rep.test_kind = UnitRootTest::PhillipsPerron;
    rep.deterministic = det;
    rep.lag_or_bandwidth = q;
    rep.statistic = z_tau;
    fill_adf_criticals(rep, det, rows);
    return rep;
}

UnitRootReport kpss_test(std::span<const double> series, Deterministic det,
                         std::optional<int> bandwidth) {
    const int n = static_cast<int>(series.size());
    if (n < kMinSample) {
        throw TooShort("kpss_test: need at least 25 observations");
    }

    // Residuals from the deterministic component.
    std::vector<double> e(series.begin(), series.end());
    if (det == Deterministic::ConstantOnly) {
        double mean = 0.0;
        for (double v : e) mean += v;
        mean /= n;
        for (double& v : e) v -= mean;
    } else {
        Matrix x(n, 2);
        Vector y(n);
        for (int t = 0; t < n; ++t) {
            x(t, 0) = 1.0;
            x(t, 1) = t + 1;
            y(t) = e[static_cast<std::size_t>(t)];
        }
        const OlsResult fit = ols(x, y);
        const Vector resid = y - x * fit.coef;
        for (int t = 0; t < n; ++t) e[static_cast<std::size_t>(t)] = resid(t);
    }

    double sum_sq = 0.0;
    for (double v : e) sum_sq += v * v;

    UnitRootReport rep;
    rep.test_kind = UnitRootTest::KPSS;
    rep.deterministic = det;
    const double* cv = det == Deterministic::ConstantOnly ? kKpssLevel : kKpssTrend;
    rep.cv1 = cv[0];
    rep.cv5 = cv[1];
    rep.cv10 = cv[2];

    if (sum_sq == 0.0) {
        // Exactly constant input: zero partial sums, statistic 0.
        rep.statistic = 0.0;
        rep.reject_at_5pct = false;
        rep.reject_at_1pct = false;
        rep.lag_or_bandwidth = 0;
        return rep;
    }

    const int q = bandwidth.value_or(newey_west_bandwidth(e));
    const double lrv = long_run_variance(e, q);
    if (!(lrv > 0.0)) {
        throw NonPositiveLongRunVariance("kpss_test: long-run variance is not positive");
    }

    double partial = 0.0;
    double num = 0.0;
    for (double v : e) {
        partial += v;
        num += partial * partial;
    }
    rep.statistic = num / (double(n) * double(n) * lrv);
    rep.lag_or_bandwidth = q;
    rep.reject_at_5pct = rep.statistic > rep.cv5;
    rep.reject_at_1pct = rep.statistic > rep.cv1;
    return rep;
}

std::vector<VariableBattery> stationarity_battery(const AlignedPanel& panel) {
    std::vector<VariableBattery> out;
    for (Eigen::Index c = 0; c < panel.cols(); ++c) {
        const Vector col = panel.values().col(c);
        const std::span<const double> view(col.data(), static_cast<std::size_t>(col.size()));
        VariableBattery b;
        b.variable = panel.columns()[static_cast<std::size_t>(c)];
        b.adf = adf_test(view);
        b.pp = pp_test(view);
        b.kpss = kpss_test(view);
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace credlink
