import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    port: 5173,
    // the UI talks to the API on the same origin; in dev, proxy to the service
    proxy: {
      "^/(health|search|similar|more|suggest|segments|mask|generate|keywords|save|session|event|images)": {
        target: "http://127.0.0.1:8000",
        changeOrigin: true,
      },
    },
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 30000,
    hookTimeout: 30000,
  },
});
