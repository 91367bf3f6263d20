#!/usr/bin/env node
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { renderChover, renderTail } from "./render.js";

const argv = yargs(hideBin(process.argv))
  .command("chover", "running-max curves with the predicted-limit reference line", (y) =>
    y
      .option("csv", { type: "string", demandOption: true, describe: "records.csv path" })
      .option("summary", { type: "string", demandOption: true, describe: "summary.json path" })
      .option("out", { type: "string", demandOption: true, describe: "output SVG path" })
      .option("column", { type: "string", default: "runmax_gamma" })
      .option("linear-x", { type: "boolean", default: false })
  )
  .command("tail", "log-log scatter of |T| against n with the normalizer reference", (y) =>
    y
      .option("csv", { type: "string", demandOption: true })
      .option("summary", { type: "string", demandOption: true })
      .option("out", { type: "string", demandOption: true })
      .option("column", { type: "string", default: "T" })
      .option("reference", { type: "string", default: "B_an" })
  )
  .demandCommand(1)
  .strict()
  .parseSync();

const job = {
  csvPath: argv.csv as string,
  summaryPath: argv.summary as string,
  outPath: argv.out as string,
  column: (argv.column as string) ?? "runmax_gamma",
  logX: !(argv["linear-x"] as boolean | undefined),
};

try {
  if (argv._[0] === "chover") {
    renderChover(job);
  } else {
    renderTail(job, job.column === "runmax_gamma" ? "T" : job.column, argv.reference as string);
  }
  console.log(job.outPath);
} catch (err) {
  console.error(`error: ${err instanceof Error ? err.message : err}`);
  process.exit(1);
}
