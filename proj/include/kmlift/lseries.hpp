#pragma once

#include "kmlift/lseries/bernoulli.hpp"
#include "kmlift/lseries/cohen.hpp"
#include "kmlift/lseries/dirstream.hpp"
#include "kmlift/lseries/qexp.hpp"
