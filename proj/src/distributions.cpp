#include "credlink/distributions.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace credlink {

double f_survival(double x, double df1, double df2) {
    if (x <= 0.0) return 1.0;
    const boost::math::fisher_f_distribution<double> dist(df1, df2);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double student_t_two_sided_critical(double level, double df) {
    const boost::math::students_t_distribution<double> dist(df);
    return boost::math::quantile(dist, 1.0 - level / 2.0);
}

double student_t_two_sided_pvalue(double x, double df) {
    const boost::math::students_t_distribution<double> dist(df);
    const double t = x < 0.0 ? -x : x;
    return 2.0 * boost::math::cdf(boost::math::complement(dist, t));
}

}  // namespace credlink
