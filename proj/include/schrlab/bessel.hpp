#pragma once

#include <cmath>

namespace lab {

// J0/J1 via the classic Cephes rational approximations (~1e-15 absolute for
// small args, ~1e-13 in the asymptotic regime). std::cyl_bessel_j is far too
// slow for the ~1e9 kernel evaluations the radial transforms need; agreement
// with it is checked in the unit tests.

namespace bessel_detail {

inline double polevl(double x, const double* c, int n) {
    double r = c[0];
    for (int i = 1; i <= n; i++) r = r * x + c[i];
    return r;
}
// polynomial with implied leading coefficient 1, degree n
inline double p1evl(double x, const double* c, int n) {
    double r = x + c[0];
    for (int i = 1; i < n; i++) r = r * x + c[i];
    return r;
}


inline constexpr double J0_PP[7] = {
    7.96936729297347051624e-4, 8.28352392107440799803e-2, 1.23953371646414299388e0,
    5.44725003058768775090e0,  8.74716500199817011941e0,  5.30324038235394892183e0,
    9.99999999999999997821e-1};
inline constexpr double J0_PQ[7] = {
    9.24408810558863637013e-4, 8.56288474354474431428e-2, 1.25352743901058953537e0,
    5.47097740330417105182e0,  8.76190883237069594232e0,  5.30605288235394617618e0,
    1.00000000000000000218e0};
inline constexpr double J0_QP[8] = {
    -1.13663838898469149931e-2, -1.28252718670509318512e0, -1.95539544257735972385e1,
    -9.32060152123768231369e1,  -1.77681167980488790968e2, -1.47077505154951170175e2,
    -5.14105326766599330220e1,  -6.05014350600728481186e0};
inline constexpr double J0_QQ[7] = {
    6.43178256118178023184e1, 8.56430025976980587198e2, 3.88240183605401609683e3,
    7.24046774195652478189e3, 5.93072701187316984827e3, 2.06209331660327847417e3,
    2.42005740240291393179e2};

inline constexpr double J1_RP[4] = {
    -8.99971225705559398224e8, 4.52228297998194034323e11, -7.27494245221818276015e13,
    3.68295732863852883286e15};
inline constexpr double J1_RQ[8] = {
    6.20836478118054335476e2,  2.56987256757748830383e5,  8.35146791431949253037e7,
    2.21511595479792499675e10, 4.74914122079991414898e12, 7.84369607876235854894e14,
    8.95222336184627338078e16, 5.32278620332680085395e18};
inline constexpr double J1_PP[7] = {
    7.62125616208173112003e-4, 7.31397056940917570436e-2, 1.12719608129684925192e0,
    5.11207951146807644818e0,  8.42404590141772420927e0,  5.21451598682361504063e0,
    1.00000000000000000254e0};
inline constexpr double J1_PQ[7] = {
    5.71323128072548699714e-4, 6.88455908754495404082e-2, 1.10514232634061696926e0,
    5.07386386128601488557e0,  8.39985554327604159757e0,  5.20982848682361821619e0,
    9.99999999999999997461e-1};
inline constexpr double J1_QP[8] = {
    5.10862594750176621635e-2, 4.98213872951233449420e0, 7.58238284132545283818e1,
    3.66779609360150777800e2,  7.10856304998926107277e2, 5.97489612400613639965e2,
    2.11688757100572135698e2,  2.52070205858023719784e1};
inline constexpr double J1_QQ[7] = {
    7.42373277035675149943e1, 1.05644886038262816351e3, 4.98641058337653607651e3,
    9.56231892404756170795e3, 7.99704160447350683650e3, 2.82619278517639096600e3,
    3.36093607810698293419e2};
inline constexpr double J1_Z1 = 1.46819706421238932572e1;
inline constexpr double J1_Z2 = 4.92184563216946036703e1;

inline constexpr double SQ2OPI = 7.9788456080286535587989e-1;
inline constexpr double PIO4 = 7.85398163397448309616e-1;
inline constexpr double THPIO4 = 2.35619449019234492885e0;

}  // namespace bessel_detail

inline double fast_j0(double x) {
    using namespace bessel_detail;
    x = std::fabs(x);
    if (x <= 5.0) {
        // power series: terms peak near 10 at x = 5, so absolute error stays
        // ~1e-14; converges in < 30 terms
        double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 40; k++) {
            term *= -q / (double(k) * double(k));
            sum += term;
            if (std::fabs(term) < 1e-18) break;
        }
        return sum;
    }
    double w = 5.0 / x;
    double z = w * w;
    double p = polevl(z, J0_PP, 6) / polevl(z, J0_PQ, 6);
    double q = polevl(z, J0_QP, 7) / p1evl(z, J0_QQ, 7);
    double xn = x - PIO4;
    p = p * std::cos(xn) - w * q * std::sin(xn);
    return p * SQ2OPI / std::sqrt(x);
}

inline double fast_j1(double x) {
    using namespace bessel_detail;
    double sign = x < 0 ? -1.0 : 1.0;
    x = std::fabs(x);
    if (x <= 5.0) {
        double z = x * x;
        double w = polevl(z, J1_RP, 3) / p1evl(z, J1_RQ, 8);
        w = w * x * (z - J1_Z1) * (z - J1_Z2);
        return sign * w;
    }
    double w = 5.0 / x;
    double z = w * w;
    double p = polevl(z, J1_PP, 6) / polevl(z, J1_PQ, 6);
    double q = polevl(z, J1_QP, 7) / p1evl(z, J1_QQ, 7);
    double xn = x - THPIO4;
    p = p * std::cos(xn) - w * q * std::sin(xn);
    return sign * p * SQ2OPI / std::sqrt(x);
}

}  // namespace lab
