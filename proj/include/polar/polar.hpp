#pragma once

#include "polar/core/dataset.hpp"
#include "polar/core/error.hpp"
#include "polar/core/jsonl.hpp"
#include "polar/core/language.hpp"
#include "polar/core/random.hpp"
#include "polar/core/record.hpp"
#include "polar/core/schema.hpp"
#include "polar/core/training_config.hpp"
#include "polar/core/unicode.hpp"

#include "polar/augment/anonymize.hpp"
#include "polar/augment/casing.hpp"
#include "polar/augment/dedup.hpp"
#include "polar/augment/homoglyph.hpp"
#include "polar/augment/pipeline.hpp"

#include "polar/assemble/assemble.hpp"

#include "polar/score/delta.hpp"
#include "polar/score/metrics.hpp"
#include "polar/score/predictions.hpp"
#include "polar/score/report.hpp"

#include "polar/appraisal/evaluate.hpp"
#include "polar/appraisal/features.hpp"
#include "polar/appraisal/logistic.hpp"
#include "polar/appraisal/loss.hpp"
#include "polar/appraisal/model_io.hpp"
