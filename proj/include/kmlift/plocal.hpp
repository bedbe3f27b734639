#pragma once

#include "kmlift/plocal/density.hpp"
#include "kmlift/plocal/mass.hpp"
#include "kmlift/plocal/padic.hpp"
#include "kmlift/plocal/pseries.hpp"
#include "kmlift/plocal/siegel.hpp"
