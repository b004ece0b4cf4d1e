#pragma once

namespace altroute::study {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
/// evaluated with a modified-Lentz continued fraction. Absolute error is
/// below 1e-12 over the parameter ranges used by the ANOVA code.
double regularized_incomplete_beta(double a, double b, double x);

/// Upper tail P(X > f) of the F distribution with (df1, df2) degrees of
/// freedom. f = +inf gives 0; f <= 0 gives 1.
double f_upper_tail(double f, double df1, double df2);

}  // namespace altroute::study
