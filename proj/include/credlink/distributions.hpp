#pragma once

namespace credlink {

// Upper-tail probability P(F > x) for the Fisher F distribution with
// (df1, df2) degrees of freedom, evaluated through the regularized
// incomplete beta function.
double f_survival(double x, double df1, double df2);

// Two-sided Student-t critical value at significance `level` (e.g. 0.05
// gives the 97.5% quantile).
double student_t_two_sided_critical(double level, double df);

// P(|t| > x) for Student-t with df degrees of freedom.
double student_t_two_sided_pvalue(double x, double df);

}  // namespace credlink
