#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include "ringlab/dsl.hpp"
TEST_CASE("placeholder") { CHECK(ringlab::zmod(6).size() == 6); }
