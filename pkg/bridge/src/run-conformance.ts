/** CLI entry: replay a golden-fixture directory and print a report. */

import { runConformance } from "./conformance.js";

const dir = process.argv[2] ?? "../golden";
const report = runConformance(dir);
console.log(`fixtures: ${report.fixtures}, cases: ${report.cases}, passed: ${report.passed}`);
for (const failure of report.failures) {
  console.error(
    `FAIL ${failure.fixture} case ${failure.caseIndex} (${failure.strategy}): ${failure.reason}`,
  );
}
process.exit(report.failures.length === 0 ? 0 : 1);
