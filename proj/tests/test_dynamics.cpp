#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fluxion/dynamics.hpp"

using namespace fluxion;

namespace {

constexpr double kPi = std::numbers::pi;

// Reference values from an independent scipy.linalg.expm evaluation of the
// canonical parameter set at Phi = pi/2.
constexpr double kRefTabAt04 = 0.17645658711858891;
constexpr double kRefTbaAt04 = 3.7714023516891415e-07;
constexpr double kRefTabAt1 = 0.056350061277575206;
constexpr double kRefPopAAt04 = 0.13975846526358882;

SystemParams decoupled(double gamma = 1.0)
{
    SystemParams p;
    p.gamma_a = p.gamma_b = p.gamma_c = p.gamma_d = gamma;
    return p;
}

double max_amplitude_gap(const Trajectory& x, const Trajectory& y)
{
    double gap = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto d = x.states[i].to_vector() - y.states[i].to_vector();
        gap = std::max(gap, d.max_abs());
    }
    return gap;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace

TEST(BuildHeff, DecoupledLevels)
{
    const auto h = build_h_eff(decoupled());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            EXPECT_EQ(h(r, c), r == c ? cplx(0.0, -0.5) : cplx(0.0)) << r << "," << c;
}

TEST(BuildHeff, CanonicalEntries)
{
    const auto h = build_h_eff(canonical_params(kPi / 2));
    EXPECT_NEAR(std::abs(h(0, 2) - cplx(0, 10)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(h(2, 0) - cplx(0, -10)), 0.0, 1e-14);
    EXPECT_EQ(h(2, 2), cplx(50, -50));
    EXPECT_EQ(h(3, 3), cplx(-50, -50));
    EXPECT_EQ(h(0, 0), cplx(0, -0.5));
    EXPECT_EQ(h(0, 3), cplx(10));
    EXPECT_EQ(h(1, 2), cplx(10));
    EXPECT_EQ(h(3, 1), cplx(10));
    EXPECT_EQ(h(0, 1), cplx(0));
    EXPECT_EQ(h(1, 0), cplx(0));
    EXPECT_EQ(h(2, 3), cplx(0));
    EXPECT_EQ(h(3, 2), cplx(0));
}

TEST(BuildHeff, ComplexSymmetricWithoutFlux)
{
    auto p = canonical_params(0.0);
    p.omega_da = 3.0;
    p.delta_d = 7.0;
    const auto h = build_h_eff(p);
    EXPECT_EQ(h, h.transpose());
}

TEST(BuildHeff, PropagatesValidation)
{
    auto p = canonical_params();
    p.gamma_d = -1.0;
    EXPECT_THROW(build_h_eff(p), Error);
}

TEST(Propagator, IdentityAtZero)
{
    EXPECT_EQ(propagator(canonical_params(), 0.0), ComplexMatrix4::identity());
}

TEST(Propagator, PureDecay)
{
    auto p = decoupled();
    p.gamma_a = 1.7;
    p.delta_c = 4.0;
    const auto u = propagator(p, 1.3);
    EXPECT_NEAR(std::norm(u(0, 0)), std::exp(-1.7 * 1.3), 1e-14);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            if (r != c) {
                EXPECT_EQ(u(r, c), cplx(0.0));
            }
}

TEST(Propagator, MatchesFrozenReference)
{
    const auto p = canonical_params(kPi / 2);
    const auto u = propagator(p, 0.4);
    EXPECT_NEAR(std::norm(u(0, 1)), kRefTabAt04, 1e-12);
    EXPECT_NEAR(std::norm(u(1, 0)), kRefTbaAt04, 1e-15);
    EXPECT_NEAR(std::norm(u(0, 0)), kRefPopAAt04, 1e-12);
    EXPECT_NEAR(std::norm(propagator(p, 1.0)(0, 1)), kRefTabAt1, 1e-12);
}

TEST(Propagator, PeakWithinFifteenPercentOfAnalytic)
{
    const double analytic = 32.0 / (25.0 * std::numbers::e * std::numbers::e);
    const double exact = std::norm(propagator(canonical_params(kPi / 2), 0.4)(0, 1));
    EXPECT_LT(std::abs(exact - analytic) / analytic, 0.15);
}

TEST(Propagator, RejectsBadTime)
{
    EXPECT_THROW(propagator(canonical_params(), -1.0), Error);
    EXPECT_THROW(propagator(canonical_params(), std::nan("")), Error);
}

TEST(Propagator, Composition)
{
    const auto p = canonical_params(0.9);
    for (auto [t1, t2] : {std::pair{0.1, 0.3}, {0.5, 1.25}, {2.0, 0.01}}) {
        const auto lhs = propagator(p, t1 + t2);
        const auto rhs = propagator(p, t1) * propagator(p, t2);
        EXPECT_LT((lhs - rhs).max_abs(), 1e-9);
    }
}

TEST(Evolve, PureDecayOfA)
{
    const auto times = linspace(0.0, 3.0, 31);
    const auto traj = evolve(decoupled(), StateVector::level(Level::a), times);
    ASSERT_EQ(traj.size(), times.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto pop = traj.states[i].populations();
        EXPECT_NEAR(pop[0], std::exp(-times[i]), 1e-14);
        EXPECT_EQ(pop[1], 0.0);
        EXPECT_EQ(pop[2], 0.0);
        EXPECT_EQ(pop[3], 0.0);
    }
}

TEST(Evolve, PopulationsFromA)
{
    // |a> at Phi = pi/2: almost nothing reaches |b>.
    const auto traj = evolve(canonical_params(kPi / 2), StateVector::level(Level::a), linspace(0.0, 10.0, 2001));
    double max_b = 0.0;
    for (const auto& s : traj.states)
        max_b = std::max(max_b, s.populations()[1]);
    EXPECT_LT(max_b, 0.01);
}

TEST(Evolve, PopulationsFromB)
{
    const auto traj = evolve(canonical_params(kPi / 2), StateVector::level(Level::b), linspace(0.0, 10.0, 2001));
    double max_a = 0.0;
    for (const auto& s : traj.states)
        max_a = std::max(max_a, s.populations()[0]);
    EXPECT_GT(max_a, 0.1);
}

TEST(Evolve, UnsortedTimesRejected)
{
    const std::vector<double> bad{0.0, 0.5, 0.4};
    try {
        evolve(canonical_params(), StateVector::level(Level::a), bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsortedTimes);
    }
    const std::vector<double> dup{0.0, 0.0};
    EXPECT_THROW(evolve(canonical_params(), StateVector::level(Level::a), dup), Error);
    const std::vector<double> negative{-0.1, 0.0};
    EXPECT_THROW(evolve(canonical_params(), StateVector::level(Level::a), negative), Error);
}

TEST(IntegrateRotating, MatchesExactPropagation)
{
    const auto p = canonical_params(kPi / 2);
    for (Level start : {Level::a, Level::b}) {
        const auto rk = integrate_rotating(p, StateVector::level(start), 1.0, 1e-4, 100);
        const auto exact = evolve(p, StateVector::level(start), rk.times);
        EXPECT_LT(max_amplitude_gap(rk, exact), 1e-6);
    }
}

TEST(IntegrateRotating, PureDecayAccuracy)
{
    const auto traj = integrate_rotating(decoupled(), StateVector::level(Level::a), 1.0, 1e-4);
    EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
    const double expected = std::exp(-0.5);
    EXPECT_LT(std::abs(std::abs(traj.states.back().a) - expected) / expected, 1e-8);
}

TEST(IntegrateRotating, ZeroStateStaysZero)
{
    const auto traj = integrate_rotating(canonical_params(), StateVector{}, 0.5, 1e-3);
    for (const auto& s : traj.states)
        EXPECT_EQ(s.norm(), 0.0);
}

TEST(IntegrateRotating, StepGuard)
{
    // max|H_eff| = |50 - 50i| ~ 70.7, so dt = 2e-3 gives 0.14 > 0.1.
    try {
        integrate_rotating(canonical_params(), StateVector::level(Level::a), 1.0, 2e-3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::StepTooLarge);
    }
    EXPECT_NO_THROW(integrate_rotating(canonical_params(), StateVector::level(Level::a), 0.01, 1e-3));
    EXPECT_THROW(integrate_rotating(canonical_params(), StateVector::level(Level::a), 1.0, 0.0), Error);
}

TEST(IntegrateRotating, ZeroDurationReturnsInitialState)
{
    const auto traj = integrate_rotating(canonical_params(), StateVector::level(Level::b), 0.0, 1e-4);
    ASSERT_EQ(traj.size(), 1u);
    EXPECT_EQ(traj.states[0].b, cplx(1.0));
}

TEST(IntegrateLab, FrameEquivalence)
{
    const auto p = canonical_params(kPi / 2);
    const auto lab = integrate_lab(p, StateVector::level(Level::a), 1.0, 1e-4, 100);
    const auto rot = integrate_rotating(p, StateVector::level(Level::a), 1.0, 1e-4, 100);
    ASSERT_EQ(lab.size(), rot.size());
    for (std::size_t i = 0; i < lab.size(); ++i) {
        EXPECT_NEAR(std::abs(lab.states[i].c_tilde), std::abs(rot.states[i].c_tilde), 1e-6);
        const auto pl = lab.states[i].populations();
        const auto pr = rot.states[i].populations();
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_NEAR(pl[k], pr[k], 1e-6);
    }
    EXPECT_LT(max_amplitude_gap(lab, rot), 1e-6);
}

TEST(IntegrateLab, CoincidesWithoutDetuning)
{
    auto p = canonical_params(0.4);
    p.delta_c = p.delta_d = 0.0;
    const auto lab = integrate_lab(p, StateVector::level(Level::b), 1.0, 1e-4, 50);
    const auto rot = integrate_rotating(p, StateVector::level(Level::b), 1.0, 1e-4, 50);
    EXPECT_LT(max_amplitude_gap(lab, rot), 1e-9);
}

TEST(IntegrateLab, StepGuard)
{
    EXPECT_THROW(integrate_lab(canonical_params(), StateVector::level(Level::a), 1.0, 5e-3), Error);
}

TEST(TransitionProbabilities, ZeroAtStart)
{
    const auto rec = transition_probabilities(canonical_params(), 0.0);
    EXPECT_EQ(rec.t_ab, 0.0);
    EXPECT_EQ(rec.t_ba, 0.0);
}

TEST(TransitionProbabilities, ReciprocalForSymmetricParams)
{
    auto p = canonical_params(0.0);
    p.delta_d = p.delta_c;
    for (double t : {0.1, 0.4, 1.5}) {
        const auto rec = transition_probabilities(p, t);
        EXPECT_NEAR(rec.t_ab, rec.t_ba, 1e-15 + 1e-12 * rec.t_ab);
        EXPECT_GT(rec.t_ab, 0.0);
    }
}

TEST(TransitionProbabilities, StrongIsolationAtQuarterTurn)
{
    const auto rec = transition_probabilities(canonical_params(kPi / 2), 0.4);
    EXPECT_GT(rec.t_ab / rec.t_ba, 100.0);
    EXPECT_DOUBLE_EQ(rec.isolation, rec.t_ab / rec.t_ba);
}

TEST(TransitionProbabilities, InfiniteIsolationWhenUnderflow)
{
    const auto rec = transition_from_propagator(ComplexMatrix4::identity(), 0.0);
    EXPECT_TRUE(std::isinf(rec.isolation));
}

TEST(SweepFlux, MirrorSymmetry)
{
    const auto p = canonical_params();
    const std::vector<double> phis{-2.5, -kPi / 2, -0.3, 0.3, kPi / 2, 2.5};
    const auto recs = sweep_flux(p, phis, 0.4);
    ASSERT_EQ(recs.size(), phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const auto& mirror = recs[phis.size() - 1 - i];
        EXPECT_NEAR(recs[i].t_ab, mirror.t_ba, 1e-12);
    }
}

TEST(SweepFlux, ReciprocalAtZeroAndPi)
{
    const std::vector<double> phis{0.0, kPi};
    const auto recs = sweep_flux(canonical_params(), phis, 0.4);
    for (const auto& r : recs) {
        EXPECT_NEAR(r.t_ab, r.t_ba, 1e-12);
        EXPECT_NEAR(r.isolation, 1.0, 1e-9);
    }
}

TEST(SweepFlux, IsolationPeaksAtQuarterTurn)
{
    const auto phis = flux_grid(629);
    const auto recs = sweep_flux(canonical_params(), phis, 0.4);
    std::size_t best = 0;
    for (std::size_t i = 1; i < recs.size(); ++i)
        if (recs[i].isolation > recs[best].isolation)
            best = i;
    EXPECT_LE(std::abs(phis[best] - kPi / 2), 2 * kPi / 629);
}

TEST(SweepFlux, OrderedByGrid)
{
    const auto phis = flux_grid(64);
    const auto recs = sweep_flux(canonical_params(), phis, 0.3);
    for (std::size_t i = 0; i < phis.size(); ++i)
        EXPECT_EQ(recs[i].t_ab, transition_probabilities(with_flux(canonical_params(), phis[i]), 0.3).t_ab);
}

TEST(FluxGrid, CoversHalfOpenInterval)
{
    const auto g = flux_grid(4);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_DOUBLE_EQ(g[0], -kPi / 2);
    EXPECT_DOUBLE_EQ(g[1], 0.0);
    EXPECT_DOUBLE_EQ(g[3], kPi);
    EXPECT_THROW(flux_grid(0), Error);
}
