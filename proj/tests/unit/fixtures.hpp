#pragma once

#include "ordest/error.hpp"
#include "ordest/model.hpp"

#include <doctest.h>

namespace fixtures {

// (x1_min, x2_min, t1, t2) = (0.5, 0.8, 2, 3) with (n1, n2) = (4, 5).
inline ordest::SufficientStats s0() {
    ordest::SufficientStats s;
    s.x1_min = 0.5;
    s.x2_min = 0.8;
    s.t1 = 2.0;
    s.t2 = 3.0;
    s.n1 = 4;
    s.n2 = 5;
    return s;
}

template <class F>
ordest::ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const ordest::Error& e) {
        return e.code();
    }
    FAIL("expected an ordest::Error");
    return ordest::ErrorCode::InvalidArgument;
}

}  // namespace fixtures
