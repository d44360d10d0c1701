import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    globalSetup: "./tests/setup/service.ts",
    testTimeout: 120000,
    hookTimeout: 60000,
  },
});
