#include <doctest.h>
#include "sfg/sparse_matrix.hpp"
TEST_CASE("placeholder") { CHECK(true); }
