#ifndef BARRIERCLOCK_CLOCK_HPP
#define BARRIERCLOCK_CLOCK_HPP

#include <vector>

#include "barrierclock/weaktimes.hpp"

// Physical clock realizations of the weak measurement of the region
// projector: a Larmor spin precessing in a field confined to the region
// (spin-1/2 and spin-S, coherent or squeezed along x) and a continuous
// Gaussian von Neumann pointer.  In the weak-coupling limit all of them
// read off the same pair (Re tau, -Im tau).
//
// Sign conventions (frozen against the rectangular-barrier benchmark, see
// docs/conventions.md): the field along +z gives the spin-m component the
// potential V - hbar omega_L m on the region; in_plane_angle is measured in
// the precession sense (positive from +x toward -y), so tau_y -> +Re tau;
// out_of_plane is <S_z>_f/(hbar S), so tau_z -> -Im tau.

namespace barrierclock {

/// Spin state in the S_z basis, amplitudes ordered m = -S..S.
struct SpinState {
  double S = 0.5;
  std::vector<cplx> amplitudes;

  double delta_sz() const;  // in units of hbar
};

/// Maximum-S_x coherent state: binomial amplitude profile, Delta S_z = sqrt(S/2).
SpinState coherent_spin_state(double S);

/// Squeezed proxy: real Gaussian S_z-amplitude profile with the Gaussian
/// parameter calibrated so the realized Delta S_z equals `width` (the naive
/// exp(-m^2/4 width^2) profile realizes a smaller lattice variance once
/// width ~ 1).  Mean spin points along +x.  Throws for width <= 0 or widths
/// unreachable on the discrete m lattice.
SpinState squeezed_spin_state(double S, double width);

struct SpinClockResult {
  double omega_L = 0.0;
  double in_plane_angle = 0.0;  // precession angle, sense defined above
  double out_of_plane = 0.0;    // <S_z>_f / (hbar S)
  double tau_y = 0.0;           // in_plane_angle / omega_L
  double tau_z = 0.0;           // out_of_plane / omega_L
  double norm = 0.0;            // post-selected norm (= |t|^2 or |r|^2 at omega_L = 0)
  TimeChannel channel = TimeChannel::transmitted;
};

/// Spin-1/2 Larmor clock: solves the two spin potentials V -+ hbar omega_L/2
/// on the region and post-selects the channel.
SpinClockResult larmor_spin_half(const PotentialProfile& profile, const Region& region,
                                 double E, double omega_L, TimeChannel channel,
                                 const Units& units = {});

/// Spin-S Larmor clock: 2S+1 scattering solves with V - hbar omega_L m on
/// the region; angles are read from <S_+> and <S_z> of the post-selected
/// state.
SpinClockResult larmor_spin_S(const PotentialProfile& profile, const Region& region,
                              double E, double omega_L, const SpinState& state,
                              TimeChannel channel, const Units& units = {});

struct PointerOutcome {
  double sigma = 0.0;
  double g0 = 0.0;
  double dQ = 0.0;  // mean pointer position shift
  double dP = 0.0;  // mean pointer momentum shift
  double norm = 0.0;
  TimeChannel channel = TimeChannel::transmitted;
};

/// Gaussian von Neumann pointer in the momentum representation: each pointer
/// momentum P sees the potential V + g0 P on the region; the post-selected
/// pointer state is a_f(V + g0 P) Phi_0(P).  dQ and dP are exact first
/// moments on a self-checked uniform P grid (half-width 8 standard
/// deviations of Phi_0, >= 2048 points).
PointerOutcome pointer_measurement(const PotentialProfile& profile, const Region& region,
                                   double E, double g0, double sigma,
                                   TimeChannel channel, const Units& units = {});

/// Spin-1/2 clock with the field on a probe region beyond the barrier,
/// post-selected on reflection.  Reads Re tau_R of the probe region: the
/// reflected channel keeps a nonzero conditional dwell on the far side.
SpinClockResult far_side_field_effect(const PotentialProfile& profile,
                                      const Region& barrier_region,
                                      const Region& probe_region_beyond, double E,
                                      double omega_L, const Units& units = {});

}  // namespace barrierclock

#endif
