#pragma once

#include "kmlift/charsums/counts.hpp"
#include "kmlift/charsums/hsum.hpp"
#include "kmlift/charsums/jmsums.hpp"
#include "kmlift/charsums/modmat.hpp"
#include "kmlift/charsums/quadsums.hpp"
#include "kmlift/charsums/report.hpp"
