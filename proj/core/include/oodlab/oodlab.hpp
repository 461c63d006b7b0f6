#pragma once

#include "oodlab/adversarial.hpp"
#include "oodlab/distributions.hpp"
#include "oodlab/domain.hpp"
#include "oodlab/errors.hpp"
#include "oodlab/finite.hpp"
#include "oodlab/geometry.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/learners.hpp"
#include "oodlab/parallel.hpp"
#include "oodlab/point.hpp"
#include "oodlab/risk.hpp"
#include "oodlab/vc.hpp"
