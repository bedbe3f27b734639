#pragma once

#include "kmlift/exactalg/cyclo.hpp"
#include "kmlift/exactalg/laurent.hpp"
#include "kmlift/exactalg/linalg.hpp"
#include "kmlift/exactalg/numtheory.hpp"
#include "kmlift/exactalg/poly.hpp"
#include "kmlift/exactalg/quadsurd.hpp"
#include "kmlift/exactalg/rational.hpp"
#include "kmlift/exactalg/truncseries.hpp"
