#pragma once

#include <gtest/gtest.h>

#include "cloneforge/cloneforge.hpp"

namespace cloneforge::testing {

/// Asserts that `body` throws cloneforge::Error of the given kind.
template <typename F>
void expect_error(ErrorKind kind, F&& body) {
    try {
        body();
        ADD_FAILURE() << "expected " << to_string(kind) << " error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

}  // namespace cloneforge::testing
