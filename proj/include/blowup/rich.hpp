#pragma once

#include "blowup/parts.hpp"
#include "blowup/rational.hpp"

namespace blowup {

// A (rho, eps)-rich inflation of K_h in one color: the first part has edge
// density >= rho inside the color class, and the parts form a
// ((1-eps)*rho)^(e(K_h)) inflation of K_h there.
struct RichInflation {
    int color = 0;
    Rat rho;
    Rat eps;
    InflationCertificate certificate;

    int h() const { return certificate.parts.count(); }
    const PartSystem& parts() const { return certificate.parts; }

    Rat required_gamma() const {
        const unsigned long e_kh =
            static_cast<unsigned long>(h()) * (h() - 1) / 2;
        return pow_rat((1 - eps) * rho, e_kh);
    }
};

}  // namespace blowup
