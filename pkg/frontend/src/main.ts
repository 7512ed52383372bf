import { ApiClient } from "./api";
import { ChatApp } from "./chat";
import { renderFeedbackWidget } from "./feedback";

export function boot(root: HTMLElement, apiBase = ""): ChatApp {
  const api = new ApiClient(apiBase);

  const header = document.createElement("header");
  header.className = "app-header";
  const title = document.createElement("h1");
  title.textContent = "qchat";
  header.appendChild(title);

  const chatMount = document.createElement("main");
  chatMount.className = "chat";
  const app = new ChatApp(api, chatMount);

  // feedback lives at the top right, always visible
  const feedback = renderFeedbackWidget(async (stars, comment) => {
    const sessionId = JSON.parse(
      sessionStorage.getItem("qchat-log") ?? "{}",
    ).sessionId;
    if (!sessionId) throw new Error("start a conversation first");
    await api.feedback(sessionId, stars, comment);
  });
  header.appendChild(feedback);

  root.appendChild(header);
  root.appendChild(chatMount);
  return app;
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  boot(document.getElementById("app") as HTMLElement);
}
