#pragma once

#include "kmlift/quadforms/classes.hpp"
#include "kmlift/quadforms/gram.hpp"
#include "kmlift/quadforms/isometry.hpp"
#include "kmlift/quadforms/reduce.hpp"
