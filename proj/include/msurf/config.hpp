#pragma once

namespace msurf {

// Every tolerance used by the numerical core lives here and is passed explicitly.
struct NumericConfig {
    double quadTol = 1e-11;            // absolute, per path
    int quadMaxDepth = 40;             // bisection levels per segment
    double keepAwayFactor = 1e-3;      // times the waypoint-set diameter
    int branchSamples = 32;            // initial samples per segment
    int branchMaxDepth = 20;
    double branchMaxTurn = 1.0471975511965976; // largest turn of g allowed per step
    double poleRelTol = 1e-12;
    double zeroGaussTol = 1e-12;
};

} // namespace msurf
