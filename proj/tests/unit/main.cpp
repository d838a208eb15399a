// SPDX-License-Identifier: MIT
//
// tests/unit/main.cpp
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
