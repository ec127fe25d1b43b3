#!/usr/bin/env node
import { runCli } from "./render";

process.exit(runCli("spectrum", process.argv.slice(2)));
