#include <doctest.h>

#include "ntors/session.hpp"
