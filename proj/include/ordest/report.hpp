#pragma once

#include "ordest/montecarlo.hpp"

#include <string>

namespace ordest {

/// Columns sigma1,sigma2,n1,n2,mu1,mu2,estimator,pri,std_error at full
/// precision; failed cells carry NaN.
std::string table_to_csv(const PriTable& table);

/// One section per (n1, n2, mu1, mu2) block with a row per (sigma1, sigma2)
/// and a column per estimator, values rounded to two decimals.
std::string table_to_markdown(const PriTable& table);

/// %.17g formatting.
std::string format_full(double x);

}  // namespace ordest
