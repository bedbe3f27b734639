#pragma once

#include "kmlift/liftkm/ikeda.hpp"
#include "kmlift/liftkm/kmseries.hpp"
#include "kmlift/liftkm/plusform.hpp"
