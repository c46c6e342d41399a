#pragma once

#include "zpf/constants.hpp"
#include "zpf/dissipation.hpp"
#include "zpf/errors.hpp"
#include "zpf/quantity.hpp"
#include "zpf/rational.hpp"
#include "zpf/report.hpp"
#include "zpf/spectra.hpp"
#include "zpf/transition.hpp"
