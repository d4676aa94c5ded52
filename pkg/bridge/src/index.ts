export { softmax, entropyOf, argmaxLowest, orderedIndices } from "./probs.js";
export type { EntropyReport } from "./probs.js";
export { truncate } from "./strategies.js";
export type { StrategyConfig, TruncationResult } from "./strategies.js";
export { makeProcessor } from "./processor.js";
export type { LogitsProcessor } from "./processor.js";
export {
  runConformance,
  checkFixture,
  loadFixture,
  RENORM_TOLERANCE,
} from "./conformance.js";
export type { ConformanceReport, CaseFailure, GoldenFixture } from "./conformance.js";
