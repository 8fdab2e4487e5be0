// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "branchpde/growth.hpp"
#include "branchpde/multiindex.hpp"
#include "branchpde/tree.hpp"

namespace branchpde {

enum class Backend { Exact, Float };

/// Coefficient table (α, k) → value for the weighted-progeny series.
template <class Num>
struct BasicSeriesTable
{
    Backend backend = std::is_same_v<Num, Rational> ? Backend::Exact : Backend::Float;
    int d = 1;
    std::map<std::pair<MultiIndex, int>, Num> values;

    const Num& at(const MultiIndex& alpha, int k) const { return values.at({alpha, k}); }
    bool contains(const MultiIndex& alpha, int k) const { return values.count({alpha, k}) > 0; }
};

using SeriesTable = BasicSeriesTable<Rational>;
using FloatSeriesTable = BasicSeriesTable<double>;

/// P(total progeny = n) for the dominating chain over `horizon` with rate λ.
double progeny_pmf(double lambda, double horizon, long n);

// ---- coefficient sequences -------------------------------------------------

/// g(α) = (r)_{|α|} θ^{|α|}/α! (rising factorial), the factorial-regime sequence.
template <class Num>
Num factorial_g(const MultiIndex& alpha, const Num& theta, const Num& r);

/// g(α) = θ^{|α|}/α!, the exponential-regime sequence.
template <class Num>
Num exponential_g(const MultiIndex& alpha, const Num& theta);

/// g_*(m) = (r)_m θ^m / m! (rising factorial): coefficients of (1-θz)^{-r}.
std::vector<Rational> factorial_g_star(const Rational& theta, const Rational& r, int m_max);
/// g_*(m) = θ^m / m!.
std::vector<Rational> exponential_g_star(const Rational& theta, int m_max);

// ---- recursions -------------------------------------------------------------

/// A_{α,j}(k) for the dominating chain with weights `w` (the σ̃ weights), for
/// k <= kmax. Returns A_{α,j}(0..kmax).
///
/// With `collapse_j` the recursion uses A_{β,j+1} = A_{β,0}, valid when the
/// weights do not depend on j.
template <class Num>
std::vector<Num> a_recursion(const BasicWeightSpec<Num>& w, int d, const MultiIndex& alpha, int j,
                             int kmax, bool collapse_j = false);

/// Table of A_α(k) (j collapsed) for every |α| <= alpha_max and k <= kmax.
template <class Num>
BasicSeriesTable<Num> a_table(const BasicWeightSpec<Num>& w, int d, int alpha_max, int kmax);

/// Â_α(k) for all |α| <= alpha_max, k <= kmax, from Â_α(0) = g(α).
template <class Num>
BasicSeriesTable<Num> ahat_recursion(const std::function<Num(const MultiIndex&)>& g, int d,
                                     int alpha_max, int kmax);

/// Â_α(0..kmax) for one α.
template <class Num>
std::vector<Num> ahat_sequence(const std::function<Num(const MultiIndex&)>& g, int d,
                               const MultiIndex& alpha, int kmax);

// ---- closed forms -------------------------------------------------------------

/// (2d)^k r^{k+1} θ^{2k+|α|}/α! · Γ((r+2)k+r+|α|)/((k+1)! Γ((r+1)(k+1))), |α| >= 1.
double ahat_closed_factorial(double theta, double r, int d, const MultiIndex& alpha, int k);
/// Exact version for integer r.
Rational ahat_closed_factorial_exact(const Rational& theta, int r, int d, const MultiIndex& alpha, int k);
/// log of ahat_closed_factorial.
double log_ahat_closed_factorial(double theta, double r, int d, const MultiIndex& alpha, int k);

/// (2d)^k θ^{2k+|α|}/(α! k!) (k+1)^{k+|α|-2}, |α| >= 1.
double ahat_closed_exponential(double theta, int d, const MultiIndex& alpha, int k);
Rational ahat_closed_exponential_exact(const Rational& theta, int d, const MultiIndex& alpha, int k);
double log_ahat_closed_exponential(double theta, int d, const MultiIndex& alpha, int k);

/// (2d)^k (k+|α|-1)!/(α!(k+1)!) Σ_{m_1+..+m_{k+1}=k+|α|-1} ∏(1+m_j) g_*(1+m_j).
/// Requires |α| >= 1 and g_star.size() > k+|α|.
Rational ahat_composition_form(const std::vector<Rational>& g_star, int d, const MultiIndex& alpha, int k);

// ---- radii and bounds -------------------------------------------------------

double radius_factorial(double theta, double r, int d);
double radius_exponential(double theta, int d);

struct DominationReport
{
    bool pass = false;
    double min_ratio = 0.0; ///< inf over (α, k, i) of (1+α_i)Â_{α+1_i}(k)/Â_α(k)
    double threshold = 0.0; ///< √(2/d)
};

/// Checks (1+α_i)Â_{α+1_i}(k) >= √(2/d) Â_α(k) through the closed-form ratio,
/// ((r+2)k+r+|α|)θ (factorial) or (k+1)θ (exponential), minimized at k = |α| = 0.
DominationReport check_domination_condition(Regime regime, double theta, double r, int d);

struct ProgenyValue
{
    double value = 0.0;
    double tail_bound = 0.0; ///< geometric estimate of the truncated remainder
    int terms = 0;
};

/// E[Ñ] for the dominating chain from (α, j), j >= 0, over `horizon` with the
/// regime's weight preset: e^{-λh} Σ_{k<=ktrunc} (1-e^{-λh})^k A_α(k).
/// Throws OutsideRadius unless (1-e^{-λh})δ₁δ₂ < R (R_{θ,r} or R_θ).
ProgenyValue expected_weighted_progeny(const MultiIndex& alpha, int j, double horizon,
                                       const GrowthParams& p, int ktrunc = 60);

struct BoundReport
{
    double bound = 0.0;
    double s = 0.0;         ///< (1-e^{-λh})δ₁δ₂
    double radius = 0.0;    ///< radius the series must stay inside
    double constant = 0.0;  ///< tracked multiplicative constant (1 for α = 0)
    std::string form;       ///< which bound was used
};

/// Upper bound on E[Ñ] over horizon h = p.T:
///   factorial α = 0:  (δ₁/2)((r+2)/(r+1))^{r+1} e^{-λh}, needs s < R_{θ,r};
///   factorial |α|>=1: C (2θd)^{|α|} δ₁ e^{-λh}/(R' - s), R' = 2^{-(r+2)}R_{θ,r};
///   exponential α = 0: δ₁ (e/2) e^{-λh}, needs s < R_θ;
///   exponential |α|>=1: C δ₁ e^{-λh} (d/log(R_θ/s))^{|α|-1}.
/// The constants C are computed from the closed forms (see tracked_constant).
/// Throws OutsideRadius.
BoundReport bound_report(const MultiIndex& alpha, const GrowthParams& p);

/// Factorial regime: C = max(C_0, sup_{1<=|α|<=m_track} sup_k Â_α(k)R'^{k+1}/(2θd)^{|α|})
/// with C_0 = ½((r+2)/(r+1))^{r+1} R', so that Ĝ_α(s) <= C(2θd)^{|α|}/(R'-s) for s < R'
/// and every tracked α. Â is taken with δ₁ = δ₂ = 1.
double factorial_tracked_constant(double theta, double r, int d, int m_track = 40);

/// Exponential regime at s: C = max_{1<=|α|<=m_track} Ĝ_α(s)/(d/log(R_θ/s))^{|α|-1}.
double exponential_tracked_constant(double theta, int d, double s, int m_track = 40);

/// Ĝ_α(s) = Σ_k Â_α(k) s^k from the closed forms, summed to convergence. |s| < R.
double ghat_series(Regime regime, double theta, double r, int d, const MultiIndex& alpha, double s);

/// Checks the coefficient form of ∂_sG = G² + ½|∇G|² on the A table built from
/// the weight preset with A_α(0) = g(α) (δ₁ = δ₂ = 1), exactly, for k < kmax
/// and |α| <= alpha_max.
bool contact_hj_consistency(const std::function<Rational(const MultiIndex&)>& g, int d, int kmax,
                            int alpha_max);

/// The preset with A(0) = g and δ₁ = δ₂ = 1, for an arbitrary sequence g.
ExactWeightSpec unit_preset_weights(const std::function<Rational(const MultiIndex&)>& g, int d);

} // namespace branchpde

#include "branchpde/progeny_impl.hpp"
