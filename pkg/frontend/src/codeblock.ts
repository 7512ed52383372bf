// Code block with a framework tag and a copy button.

import { copyToClipboard } from "./clipboard";
import type { CodeBlockData } from "./types";

export function renderCodeBlock(block: CodeBlockData): HTMLElement {
  const container = document.createElement("div");
  container.className = "code-block";

  const header = document.createElement("div");
  header.className = "code-header";

  const tag = document.createElement("span");
  tag.className = "framework-tag";
  tag.textContent = block.framework_tag;
  header.appendChild(tag);

  const button = document.createElement("button");
  button.type = "button";
  button.className = "copy-button";
  button.textContent = "Copy";
  button.disabled = block.source_text.length === 0;

  const pre = document.createElement("pre");
  const code = document.createElement("code");
  code.textContent = block.source_text;
  pre.appendChild(code);

  button.addEventListener("click", async () => {
    const copied = await copyToClipboard(block.source_text, pre);
    button.textContent = copied ? "Copied!" : "Select & copy manually";
    setTimeout(() => {
      button.textContent = "Copy";
    }, 2000);
  });

  header.appendChild(button);
  container.appendChild(header);
  container.appendChild(pre);
  return container;
}
