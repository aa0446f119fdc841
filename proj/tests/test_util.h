// Copyright 2026 The weakfisher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEAKFISHER_TESTS_TEST_UTIL_H
#define WEAKFISHER_TESTS_TEST_UTIL_H

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "weakfisher/errors.h"

namespace weakfisher {

inline double rel_diff(double actual, double expected) {
    return std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
}

}  // namespace weakfisher

#define EXPECT_REL_NEAR(actual, expected, tol) EXPECT_LE(::weakfisher::rel_diff((actual), (expected)), (tol)) \
    << #actual " = " << (actual) << ", expected " << (expected)

#define EXPECT_WF_ERROR(statement, error_code)                                      \
    do {                                                                            \
        try {                                                                       \
            statement;                                                              \
            ADD_FAILURE() << "expected " << ::weakfisher::error_name(error_code);  \
        } catch (const ::weakfisher::Error &e) {                                    \
            EXPECT_EQ(e.code(), error_code) << e.what();                            \
        }                                                                           \
    } while (0)

#endif
