#pragma once

#include <vector>

namespace stl2vec {

/// Sample Pearson correlation. Throws std::invalid_argument on length
/// mismatch or length < 2, std::domain_error on zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Throws std::domain_error on a zero-norm vector.
double cosine(const std::vector<double>& u, const std::vector<double>& v);

/// Quantile by linear interpolation of order statistics at rank (n-1)*p
/// (median of {1,2,3,4} is 2.5). p in [0, 1]; sample must be non-empty.
double quantile(std::vector<double> xs, double p);
std::vector<double> quantiles(const std::vector<double>& xs,
                              const std::vector<double>& ps);

/// Two-sample Kolmogorov-Smirnov: sup-difference of empirical CDFs, and the
/// asymptotic two-sided p-value.
double ks_statistic(std::vector<double> xs, std::vector<double> ys);
double ks_pvalue(double d, std::size_t n1, std::size_t n2);

}  // namespace stl2vec
