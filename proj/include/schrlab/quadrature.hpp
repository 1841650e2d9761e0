#pragma once

#include "schrlab/common.hpp"

namespace lab {

// 16-point Gauss-Legendre on [-1,1] (abscissas/weights to full double precision)
inline constexpr double GL16_X[16] = {
    -0.98940093499164993, -0.94457502307323258, -0.86563120238783175,
    -0.75540440835500303, -0.61787624440264375, -0.45801677765722739,
    -0.28160355077925891, -0.09501250983763744,  0.09501250983763744,
     0.28160355077925891,  0.45801677765722739,  0.61787624440264375,
     0.75540440835500303,  0.86563120238783175,  0.94457502307323258,
     0.98940093499164993};
inline constexpr double GL16_W[16] = {
    0.027152459411754095, 0.062253523938647893, 0.095158511682492785,
    0.12462897125553387,  0.14959598881657673,  0.16915651939500254,
    0.18260341504492359,  0.18945061045506850,  0.18945061045506850,
    0.18260341504492359,  0.16915651939500254,  0.14959598881657673,
    0.12462897125553387,  0.095158511682492785, 0.062253523938647893,
    0.027152459411754095};

// Panelled Gauss-Legendre for oscillatory integrands. `omega` is an upper
// bound on the instantaneous phase frequency (radians per unit length); panel
// width is chosen so GL16 resolves each panel with large margin.
struct PanelPlan {
    double a, b, width;
    int64_t panels;
};

inline PanelPlan plan_panels(double a, double b, double omega, double points_per_wave = 2.2) {
    PanelPlan p;
    p.a = a; p.b = b;
    double waves = (b - a) * std::max(omega, 1e-9) / (2.0 * M_PI);
    // GL16 resolves ~5 wavelengths per panel to ~1e-14; leave margin.
    p.panels = (int64_t)std::ceil(std::max(1.0, waves * points_per_wave / 8.0));
    p.width = (b - a) / double(p.panels);
    return p;
}

template <typename F>
cplx gl_integrate(double a, double b, double omega, F&& f, double refine = 1.0) {
    PanelPlan p = plan_panels(a, b, omega);
    int64_t n = (int64_t)std::ceil(p.panels * refine);
    double w = (b - a) / double(n);
    KahanC acc;
    for (int64_t k = 0; k < n; k++) {
        double lo = a + w * double(k);
        double half = 0.5 * w, mid = lo + half;
        for (int j = 0; j < 16; j++) acc.add(f(mid + half * GL16_X[j]) * (half * GL16_W[j]));
    }
    return acc.get();
}

}  // namespace lab
