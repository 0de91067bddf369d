#include <doctest.h>
#include "qdr/io.hpp"
TEST_CASE("placeholder") { CHECK(true); }
