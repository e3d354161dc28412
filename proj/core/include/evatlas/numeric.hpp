#pragma once

namespace evatlas {

// Quantile function of the standard normal distribution (inverse CDF).
// Wichura's algorithm AS 241 (PPND16), accurate to ~1e-16 over (0, 1).
// Out-of-range arguments (p <= 0 or p >= 1) throw ConfigError.
double normal_quantile(double p);

// Two-sided critical value for a central interval with the given coverage,
// e.g. coverage 0.95 -> 1.959963984540054.
double coverage_z(double coverage);

} // namespace evatlas
